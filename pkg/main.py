#!/usr/bin/env python3
"""
Kawamata blow-up engine - Main Entry Point

Blows up terminal quotient points of Fano weighted complete intersections,
plays the 2-ray game on the blow-up and reports whether a Sarkisov link can
start there.

Usage:
    python main.py catalog                          # Run every builtin fixture
    python main.py catalog --format json -o out.json
    python main.py run family.json --strict         # Run family files
    python main.py diagram family.json --format svg -o family.svg
    python main.py show-config                      # Show configuration
"""

import sys
from pathlib import Path

# Add src directory to Python path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.cli import cli
from src.errors import EngineError


def main():
    """Main entry point for the blow-up engine"""
    try:
        # Run the CLI
        cli()
    except KeyboardInterrupt:
        print("\n👋 Goodbye!")
        sys.exit(0)
    except EngineError as e:
        print(f"❌ Engine error {e}")
        sys.exit(2)
    except Exception as e:
        print(f"❌ Error: {e}")
        sys.exit(2)


if __name__ == "__main__":
    main()
