import pathlib
import sys

# Allow running the suite from a fresh checkout without installation.
_SRC = pathlib.Path(__file__).resolve().parent.parent / "src"
if str(_SRC) not in sys.path:
    try:
        import abcoulomb  # noqa: F401
    except ImportError:
        sys.path.insert(0, str(_SRC))
