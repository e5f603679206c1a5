from .loader import ConfigLoader, RunConfig

__all__ = ["ConfigLoader", "RunConfig"]
