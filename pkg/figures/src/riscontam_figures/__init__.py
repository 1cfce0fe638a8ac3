from .render import KINDS, SchemaError, load_rows, render

__all__ = ["KINDS", "SchemaError", "load_rows", "render"]

__version__ = "0.1.0"
