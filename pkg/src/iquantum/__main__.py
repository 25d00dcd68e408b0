"""Module entry point for python -m iquantum."""

from .cli import main

if __name__ == "__main__":
    main()
