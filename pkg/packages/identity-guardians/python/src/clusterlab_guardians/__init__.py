"""Exact identity checks over the lab's built-in parameter grids."""
