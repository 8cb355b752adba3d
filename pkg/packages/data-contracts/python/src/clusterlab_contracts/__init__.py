__all__ = ["configs", "records"]
