"""Allow ``python -m kingkernel``."""

from .cli import entry

if __name__ == "__main__":
    entry()
