"""Entry point for python -m bosecycles."""

from .cli import entry

if __name__ == "__main__":
    entry()
