"""
Main entry point for the abelian structure toolkit.
Runs the `abst` command group built by the application factory.
"""

import sys
import os

# Add the src directory to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from src.app_factory import ApplicationFactory


def main():
    """Main application entry point."""
    try:
        factory = ApplicationFactory()
        cli = factory.create_cli()
    except ValueError as e:
        print(f"Failed to start: {e}", file=sys.stderr)
        sys.exit(3)
    cli(prog_name="abst")


if __name__ == '__main__':
    main()
