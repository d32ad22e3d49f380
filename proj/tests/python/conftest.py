import os
import sys

# Build-tree runs point PARTLAT_EXT_DIR at the directory holding the compiled
# extension; installed runs need neither path edit.
_ext = os.environ.get("PARTLAT_EXT_DIR")
if _ext:
    sys.path.insert(0, _ext)
_pkg = os.path.abspath(
    os.path.join(os.path.dirname(__file__), os.pardir, os.pardir, "python")
)
if os.path.isdir(_pkg):
    sys.path.insert(0, _pkg)
