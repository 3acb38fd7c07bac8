"""graph6 and edge-list readers/writers."""

from __future__ import annotations

from typing import Iterable, Iterator

from tinsep.graph import Graph


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def to_graph6(G: Graph, header: bool = False) -> str:
    n = G.n
    out = [_encode_n(n)]
    chunk = 0
    filled = 0
    for j in range(1, n):
        mj = G.masks[j]
        for i in range(j):
            chunk = (chunk << 1) | (mj >> i & 1)
            filled += 1
            if filled == 6:
                out.append(chr(chunk + 63))
                chunk = filled = 0
    if filled:
        out.append(chr((chunk << (6 - filled)) + 63))
    s = "".join(out)
    return HEADER + s if header else s


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise FormatError("empty graph6 string")
    data = [ord(ch) - 63 for ch in s]
    if any(not 0 <= d <= 63 for d in data):
        raise FormatError(f"invalid graph6 character in {s!r}")
    if data[0] == 63:
        if len(data) > 1 and data[1] == 63:
            if len(data) < 8:
                raise FormatError("truncated graph6 size field")
            n = 0
            for d in data[2:8]:
                n = (n << 6) | d
            body = data[8:]
        else:
            if len(data) < 4:
                raise FormatError("truncated graph6 size field")
            n = (data[1] << 12) | (data[2] << 6) | data[3]
            body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise FormatError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    masks = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            k += 1
    if nbits % 6 and body[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise FormatError("non-zero padding bits in graph6 string")
    return Graph(n, tuple(masks))


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for i, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            yield from_graph6(line)
        except FormatError as e:
            raise FormatError(str(e), i) from None


def to_edgelist(G: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in G.edges())


def from_edgelist(text: str, n: int | None = None) -> Graph:
    """Parse "u v" lines (0-based).  Blank lines and ``#`` comments are ignored.

    Without ``n`` the vertex count is one more than the largest id seen.
    """
    edges = []
    top = -1
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected 'u v', got {raw!r}", i)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"non-integer vertex in {raw!r}", i) from None
        if u < 0 or v < 0:
            raise FormatError("negative vertex id", i)
        if u == v:
            raise FormatError(f"self-loop at {u}", i)
        edges.append((u, v))
        top = max(top, u, v)
    if n is None:
        n = top + 1
    elif top >= n:
        raise FormatError(f"vertex {top} out of range for n={n}")
    return Graph.from_edges(n, edges)
