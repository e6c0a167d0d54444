"""Circularly shaped multicarrier (C-FBMC) packets: synthesis, spectra,
and asynchronous-user leakage analysis."""

from .core import (
    ComplexSignal,
    OffsetSpec,
    PacketConfig,
    as_data_matrix,
    dtft,
    signal_add,
)
from .interference import (
    CombinedWindow,
    LeakageMap,
    combine_windows,
    flat_coverage,
    gains_to_db,
    leakage_analytic,
    leakage_map,
    leakage_oracle,
    leakage_sync,
    leakage_timing_flat,
)
from .prototype import (
    PrototypeCoefficients,
    check_sqrt_nyquist,
    design_phydyas,
    impulse_response,
    periodic_pulse,
)
from .spectrum import (
    EsdCurve,
    default_grid,
    esd_db,
    esd_packet,
    esd_symbol_analytic,
    esd_symbol_numeric,
    oob_metric,
)
from .waveform import (
    RAISED_COSINE,
    RECTANGULAR,
    Window,
    apply_offsets,
    demodulate,
    make_rx_window,
    make_tx_window,
    modulate_packet,
    modulate_symbol,
)

__version__ = "0.1.0"
