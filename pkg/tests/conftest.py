"""Make the oracle helpers importable regardless of invocation directory."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
