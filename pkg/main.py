"""
Main entry point for the MBR toolkit
Loads .env settings, configures logging and dispatches the command line
"""

import logging
import sys

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

from cli.commands import CommandLine  # noqa: E402
from config.settings import ConfigError  # noqa: E402


def main(argv=None) -> int:
    """Run one command; returns the process exit code (argparse exits 2 on usage errors)"""
    try:
        cli = CommandLine()
    except ConfigError as e:
        print(f"❌ Configuration error: {e}", file=sys.stderr)
        print("💡 Run 'python check_env.py' to inspect your MBR_* variables", file=sys.stderr)
        return 1

    args = cli.parse(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )

    result = cli.execute(args)
    if not result.get('success'):
        print(f"❌ {result.get('error', 'Unknown error')}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
