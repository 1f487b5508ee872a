"""tileforge: aTAM/rgTAM/DrgTAM engine, temperature-1 compiler, and analysis tools."""

__version__ = "0.1.0"
