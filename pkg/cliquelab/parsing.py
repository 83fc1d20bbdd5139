"""Module for reading and writing graphs as edge lists or DIMACS .col files

edge_list: one "u v" pair per line, '#' starts a comment, blank lines ignored.
    Vertex tokens are remapped to 0..n-1 in order of first appearance, unless
    the file carries a "# vertices: N" header (as written by `save_graph`),
    in which case the tokens are taken as literal ids in [0, N).
dimacs_col: "c" comment lines, one "p edge n m" line, then "e u v" lines
    with 1-based vertex ids.
"""
import os
import re

from .graph import Graph
from .log import logger

__all__ = [
    "FORMATS",
    "GraphParseError",
    "SelfLoopError",
    "VertexRangeError",
    "infer_format",
    "load_graph",
    "save_graph",
]

FORMATS = ("edge_list", "dimacs_col")

_VERTICES_HEADER = re.compile(r"^#\s*vertices\s*:\s*(\d+)\s*$")
_NAME_HEADER = re.compile(r"^#\s*name\s*:\s*(.*?)\s*$")


class GraphParseError(ValueError):
    def __init__(self, message, lineno=None, path=None):
        self.lineno = lineno
        self.path = path
        prefix = ""
        if path is not None:
            prefix += "{}: ".format(path)
        if lineno is not None:
            prefix += "line {}: ".format(lineno)
        super().__init__(prefix + message)


class SelfLoopError(GraphParseError):
    pass


class VertexRangeError(GraphParseError):
    pass


def infer_format(path):
    """Guess the file format from its extension (.col / .dimacs -> dimacs_col)"""
    ext = os.path.splitext(str(path))[1].lower()
    if ext in (".col", ".dimacs"):
        return "dimacs_col"
    return "edge_list"


def load_graph(path, format=None):
    """Reads a graph file

    Args:
        path (str): file to read
        format (str): "edge_list" or "dimacs_col"; inferred from the extension if None

    Returns:
        Graph: with duplicate edges collapsed

    Raises:
        GraphParseError: malformed line (message carries the line number)
        SelfLoopError: a "u u" edge
        VertexRangeError: DIMACS id outside 1..n, or literal edge-list id outside [0, N)
        OSError: file missing or unreadable
    """
    if format is None:
        format = infer_format(path)
    if format not in FORMATS:
        raise ValueError("unknown graph format {!r}, choose from {}".format(format, FORMATS))

    logger.info("Loading %s graph from %s", format, path)
    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()
    if format == "edge_list":
        return _parse_edge_list(lines, path)
    return _parse_dimacs(lines, path)


def _parse_edge_list(lines, path):
    declared_n = None
    name = None
    index = {}
    edges = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = _VERTICES_HEADER.match(line)
            if match and not index:
                declared_n = int(match.group(1))
            match = _NAME_HEADER.match(line)
            if match:
                name = match.group(1) or None
            continue
        line = line.split("#", 1)[0]
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(
                "expected 2 vertex ids, got {}: {!r}".format(len(tokens), raw), lineno, path
            )
        u_tok, v_tok = tokens
        if u_tok == v_tok:
            raise SelfLoopError("self-loop at vertex {}".format(u_tok), lineno, path)

        if declared_n is not None:
            try:
                u, v = int(u_tok), int(v_tok)
            except ValueError:
                raise GraphParseError(
                    "vertex ids must be integers: {!r}".format(raw), lineno, path
                )
            for vid in (u, v):
                if not 0 <= vid < declared_n:
                    raise VertexRangeError(
                        "vertex {} outside [0, {})".format(vid, declared_n), lineno, path
                    )
        else:
            for tok in (u_tok, v_tok):
                if tok not in index:
                    index[tok] = len(index)
            u, v = index[u_tok], index[v_tok]
        edges.append((u, v))

    n = declared_n if declared_n is not None else len(index)
    return Graph(n, edges, name=name)


def _parse_dimacs(lines, path):
    n = None
    declared_m = None
    name = None
    edges = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "c":
            if len(tokens) > 2 and tokens[1] == "name:":
                name = " ".join(tokens[2:])
            continue
        if kind == "p":
            if n is not None:
                raise GraphParseError("duplicate problem line", lineno, path)
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise GraphParseError(
                    "expected 'p edge <n> <m>': {!r}".format(raw), lineno, path
                )
            n, declared_m = _to_int(tokens[2], lineno, path), _to_int(tokens[3], lineno, path)
        elif kind == "e":
            if n is None:
                raise GraphParseError("edge line before the problem line", lineno, path)
            if len(tokens) != 3:
                raise GraphParseError("expected 'e <u> <v>': {!r}".format(raw), lineno, path)
            u, v = _to_int(tokens[1], lineno, path), _to_int(tokens[2], lineno, path)
            for vid in (u, v):
                if not 1 <= vid <= n:
                    raise VertexRangeError(
                        "vertex {} outside 1..{}".format(vid, n), lineno, path
                    )
            if u == v:
                raise SelfLoopError("self-loop at vertex {}".format(u), lineno, path)
            edges.append((u - 1, v - 1))
        else:
            raise GraphParseError("unknown line type {!r}".format(kind), lineno, path)

    if n is None:
        raise GraphParseError("missing 'p edge <n> <m>' line", None, path)
    graph = Graph(n, edges, name=name)
    if graph.edge_count != declared_m:
        logger.warning(
            "%s declares %s edges, found %s distinct", path, declared_m, graph.edge_count
        )
    return graph


def _to_int(token, lineno, path):
    try:
        return int(token)
    except ValueError:
        raise GraphParseError("not an integer: {!r}".format(token), lineno, path)


def save_graph(graph, path, format=None):
    """Write `graph` so that `load_graph(path, format)` returns the same edge set

    Edge lines are written as lexicographically sorted pairs.

    Args:
        graph (Graph): graph to write
        path (str): output filename
        format (str): "edge_list" or "dimacs_col"; inferred from the extension if None
    """
    if format is None:
        format = infer_format(path)
    if format not in FORMATS:
        raise ValueError("unknown graph format {!r}, choose from {}".format(format, FORMATS))

    logger.info("Saving %s to %s as %s", graph, path, format)
    with open(path, "w", encoding="utf-8") as f:
        if format == "edge_list":
            if graph.name:
                f.write("# name: %s\n" % graph.name)
            f.write("# vertices: %d\n" % graph.n)
            f.write("# edges: %d\n" % graph.edge_count)
            for u, v in graph.edge_list():
                f.write("%d %d\n" % (u, v))
        else:
            if graph.name:
                f.write("c name: %s\n" % graph.name)
            f.write("p edge %d %d\n" % (graph.n, graph.edge_count))
            for u, v in graph.edge_list():
                f.write("e %d %d\n" % (u + 1, v + 1))
