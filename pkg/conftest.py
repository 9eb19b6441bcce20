import pathlib
import sys

# allow running pytest from a fresh checkout without installing
_src = str(pathlib.Path(__file__).resolve().parent / "src")
if _src not in sys.path:
    sys.path.insert(0, _src)
