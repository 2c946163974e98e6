"""plumbline - CLI entry point."""

from src.commands import app

if __name__ == "__main__":
    app()
