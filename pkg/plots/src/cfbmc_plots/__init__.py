from .render import (
    FigureSpec,
    load_spec,
    read_esd_csv,
    read_map_csv,
    read_signal_csv,
    render,
    write_esd_csv,
    write_map_csv,
    write_signal_csv,
)

__version__ = "0.1.0"
