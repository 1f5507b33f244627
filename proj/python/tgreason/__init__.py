from ._tgreason import (
    CapExceeded,
    ExecutionGraph,
    Instance,
    ParseError,
    Program,
    RewritingError,
    UnsupportedProgram,
    chase,
    compare,
    equivalent,
    execute,
    format_facts,
    generate_corpus,
    materialize,
    min_datalog,
    min_linear,
    parse_facts,
    parse_program,
    tg_mat,
    tgraph_linear,
)

__all__ = [name for name in dir() if not name.startswith("_")]
