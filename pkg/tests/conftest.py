import sys
from pathlib import Path

# Test modules import the reference helpers as ``oracles``.
sys.path.insert(0, str(Path(__file__).parent))
