"""
Environment Variable Checker for the MBR toolkit
Run this script to verify your MBR_* settings before decoding
"""

import os

from dotenv import load_dotenv

from config.settings import ENV_VARS, ConfigError, load_settings
from metrics.utility import PRESETS


def check_environment() -> bool:
    """Print every MBR_* variable and validate the resolved settings"""
    print("🔍 Environment Variable Setup Check")
    print("=" * 50)

    if os.path.exists('.env'):
        load_dotenv()
        print("✅ .env file found and loaded")
    else:
        print("⚠️  .env file not found (using system environment variables)")

    print("\nℹ️  Settings:")
    print("-" * 30)
    for var, (description, default) in ENV_VARS.items():
        value = os.getenv(var)
        if value:
            print(f"✅ {var:<22} : {value} ({description})")
        else:
            shown = 'unset' if default is None else f"default '{default}'"
            print(f"⚪ {var:<22} : Using {shown} ({description})")

    print("\n" + "=" * 50)
    try:
        settings = load_settings(load_env_file=False)
    except ConfigError as e:
        print(f"❌ INVALID CONFIGURATION: {e}")
        print(f"\nKnown utility presets: {', '.join(sorted(PRESETS))} (each with optional -symmetric)")
        return False

    if settings.function_words and not os.path.exists(settings.function_words):
        print(f"⚠️  MBR_FUNCTION_WORDS points to a missing file: {settings.function_words}")

    print("🎉 CONFIGURATION VALID!")
    print(f"📊 MBR decoding with {settings.utility} over {settings.num_samples} samples, seed {settings.seed}")
    print("\nNext steps:")
    print("1. Run: python main.py decode pools.jsonl")
    print("2. Curves: python main.py curve pools.jsonl --grid 5:100:5")
    return True


if __name__ == "__main__":
    raise SystemExit(0 if check_environment() else 1)
