"""Four-element generating sets of finite partition lattices.

Thin re-export of the compiled core; see the CLI (`partlat --help`) for the
file formats shared with these functions.
"""

try:
    from partlat._core import *  # noqa: F401,F403
    from partlat._core import __doc__ as _core_doc
except ImportError:  # build-tree layout: the extension sits directly on sys.path
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _core_doc

__all__ = [
    "Partition",
    "GeneratorQuad",
    "LatticeTerm",
    "parse_prt",
    "format_prt",
    "meet",
    "join",
    "leq",
    "bell_number",
    "enumerate_all_partitions",
    "closure",
    "generates",
    "member_of_closure",
    "build_for",
    "family_quad",
    "eligible_system",
    "extension_search",
    "run_script",
    "run_script_for",
    "dump_script",
    "window_check_aleph0",
    "parse_term",
    "format_term",
    "eval_term",
    "random_terms",
    "derive_session_key",
    "emit_graph",
]
