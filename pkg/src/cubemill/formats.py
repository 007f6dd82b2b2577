"""File formats: JSON documents for complexes and foldings, a line-oriented
move format for certificates, and canonical JSON report dumping.

Every serializer is deterministic: repeated calls on equal inputs emit
identical bytes, and parsing a serialized document and serializing it again
reproduces the canonical form of the original. Parse failures raise
:class:`FormatError` carrying a line or field diagnostic.
"""

import json

from .complexes import CubicalComplex, SimplicialComplex, name_key
from .errors import FormatError
from .surgery import BacktrackRemoval, MoveChain, Rotate, SquareSlide, Split


# ---------------------------------------------------------------------------
# json helpers


def dumps_json(payload):
    """Canonical JSON text for a report payload."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg}", line=e.lineno) from None


def _expect(doc, field, types, where=""):
    if field not in doc:
        raise FormatError("missing field", field=where + field)
    value = doc[field]
    if not isinstance(value, types):
        raise FormatError(
            f"expected {' or '.join(t.__name__ for t in types)}",
            field=where + field,
        )
    return value


def _int_list(value, field):
    if not isinstance(value, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in value
    ):
        raise FormatError("expected a list of integers", field=field)
    return value


# ---------------------------------------------------------------------------
# complexes


def serialize_complex(X):
    """Canonical JSON text for a complex.

    Strict cubical complexes serialize by their maximal corner arrays, relaxed
    cw complexes by their full cell table, and simplicial complexes by their
    maximal faces over vertices relabeled canonically to 0..n-1.
    """
    if isinstance(X, SimplicialComplex):
        index = {v: i for i, v in enumerate(X.vertices)}
        maximal = sorted(
            sorted(index[v] for v in f) for f in X.maximal
        )
        return dumps_json({"kind": "simplicial", "maximal": maximal})
    if X.kind == "cubical":
        maximal = [list(X.cells[t].corners) for t in X.top_cells()]
        return dumps_json({"kind": "cubical", "maximal": maximal})
    cells = [
        {"corners": list(c.corners), "facets": list(c.facets)}
        for c in (X.cells[i] for i in sorted(X.cells))
    ]
    return dumps_json({"kind": "cw", "cells": cells})


def parse_complex(text):
    """Parse a complex document, canonicalizing cell order and frames."""
    doc = _loads(text)
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object", line=1)
    kind = _expect(doc, "kind", (str,))
    if kind == "simplicial":
        maximal = _expect(doc, "maximal", (list,))
        faces = []
        for i, f in enumerate(maximal):
            faces.append(tuple(_int_list(f, f"maximal[{i}]")))
            if len(set(faces[-1])) != len(faces[-1]):
                raise FormatError("repeated vertex in face", field=f"maximal[{i}]")
        return SimplicialComplex(faces)
    if kind == "cubical":
        maximal = _expect(doc, "maximal", (list,))
        lists = [_int_list(f, f"maximal[{i}]") for i, f in enumerate(maximal)]
        for i, arr in enumerate(lists):
            if len(arr) == 0 or len(arr) & (len(arr) - 1):
                raise FormatError(
                    "corner count must be a power of two", field=f"maximal[{i}]"
                )
        return CubicalComplex.from_maximal_cells(lists)
    if kind == "cw":
        raw = _expect(doc, "cells", (list,))
        named = {}
        for i, entry in enumerate(raw):
            if not isinstance(entry, dict):
                raise FormatError("expected an object", field=f"cells[{i}]")
            corners = _int_list(
                _expect(entry, "corners", (list,), f"cells[{i}]."),
                f"cells[{i}].corners",
            )
            facets = _int_list(
                _expect(entry, "facets", (list,), f"cells[{i}]."),
                f"cells[{i}].facets",
            )
            if len(corners) == 0 or len(corners) & (len(corners) - 1):
                raise FormatError(
                    "corner count must be a power of two", field=f"cells[{i}].corners"
                )
            name = corners[0] if len(corners) == 1 else ("cell", i)
            named[name] = (corners, facets)
        # facet references are list positions; remap them to names
        by_pos = list(named)
        remapped = {}
        for i, name in enumerate(by_pos):
            corners, facets = named[name]
            for f in facets:
                if not 0 <= f < len(by_pos):
                    raise FormatError(
                        "facet index out of range", field=f"cells[{i}].facets"
                    )
            remapped[name] = (
                tuple(corners),
                tuple(by_pos[f] for f in facets),
            )
        try:
            return CubicalComplex.from_named_cells(remapped, kind="cw")
        except (ValueError, KeyError) as e:
            raise FormatError(f"inconsistent cell table: {e}", field="cells") from None
    raise FormatError(f"unknown kind {kind!r}", field="kind")


# ---------------------------------------------------------------------------
# foldings


def serialize_folding(labels):
    """Canonical JSON text for folding labels (cubical bit tuples or
    simplicial vertex labels)."""
    rows = []
    for v in sorted(labels, key=name_key):
        lab = labels[v]
        rows.append([v, list(lab) if isinstance(lab, (tuple, list)) else lab])
    return dumps_json({"kind": "folding", "labels": rows})


def parse_folding(text):
    doc = _loads(text)
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object", line=1)
    kind = _expect(doc, "kind", (str,))
    if kind != "folding":
        raise FormatError(f"unknown kind {kind!r}", field="kind")
    rows = _expect(doc, "labels", (list,))
    labels = {}
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 2:
            raise FormatError("expected [vertex, label]", field=f"labels[{i}]")
        v, lab = row
        if not isinstance(v, int) or isinstance(v, bool):
            raise FormatError("vertex must be an integer", field=f"labels[{i}]")
        if v in labels:
            raise FormatError("vertex labeled twice", field=f"labels[{i}]")
        if isinstance(lab, list):
            labels[v] = tuple(_int_list(lab, f"labels[{i}]"))
        elif isinstance(lab, int) and not isinstance(lab, bool):
            labels[v] = lab
        else:
            raise FormatError("label must be an integer or a list", field=f"labels[{i}]")
    return labels


# ---------------------------------------------------------------------------
# certificates


def serialize_certificate(cert):
    """Line-oriented move text for a contraction certificate."""
    out = []
    _emit_cert(cert, out)
    return "\n".join(out) + "\n"


def _emit_cert(cert, out):
    if isinstance(cert, MoveChain):
        out.append("chain")
        for mv in cert.moves:
            if isinstance(mv, BacktrackRemoval):
                out.append(f"backtrack {mv.j}")
            elif isinstance(mv, SquareSlide):
                out.append(f"slide {mv.j} {mv.w} {mv.square}")
            elif isinstance(mv, Rotate):
                out.append(f"rotate {mv.k}")
            else:
                raise ValueError(f"unknown move {mv!r}")
        out.append("end")
    elif isinstance(cert, Split):
        out.append(
            f"split rotate {cert.rotate} mirror {cert.mirror_index} "
            f"support {cert.support_index}"
        )
        out.append("bridge " + " ".join(str(v) for v in cert.bridge))
        out.append("projected " + " ".join(str(v) for v in cert.projected))
        out.append("left")
        _emit_cert(cert.left, out)
        out.append("right")
        _emit_cert(cert.right, out)
        out.append("end")
    else:
        raise ValueError(f"unknown certificate node {cert!r}")


class _Lines:
    def __init__(self, text):
        self.rows = []
        for n, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0].strip()
            if body:
                self.rows.append((n, body))
        self.pos = 0

    def peek(self):
        if self.pos >= len(self.rows):
            raise FormatError("unexpected end of certificate")
        return self.rows[self.pos]

    def take(self):
        row = self.peek()
        self.pos += 1
        return row

    def expect(self, word):
        n, body = self.take()
        if body != word:
            raise FormatError(f"expected {word!r}", line=n)
        return n


def _ints(parts, n):
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise FormatError("expected integers", line=n) from None


def parse_certificate(text):
    lines = _Lines(text)
    cert = _parse_cert(lines)
    if lines.pos != len(lines.rows):
        n, _body = lines.peek()
        raise FormatError("trailing content after certificate", line=n)
    return cert


def _parse_cert(lines):
    n, body = lines.take()
    head = body.split()
    if head[0] == "chain":
        if len(head) != 1:
            raise FormatError("chain takes no arguments", line=n)
        moves = []
        while True:
            n, body = lines.take()
            parts = body.split()
            if parts[0] == "end":
                if len(parts) != 1:
                    raise FormatError("end takes no arguments", line=n)
                return MoveChain(tuple(moves))
            if parts[0] == "backtrack" and len(parts) == 2:
                (j,) = _ints(parts[1:], n)
                moves.append(BacktrackRemoval(j))
            elif parts[0] == "slide" and len(parts) == 4:
                j, w, sq = _ints(parts[1:], n)
                moves.append(SquareSlide(j, w, sq))
            elif parts[0] == "rotate" and len(parts) == 2:
                (k,) = _ints(parts[1:], n)
                moves.append(Rotate(k))
            else:
                raise FormatError(f"unknown move {body!r}", line=n)
    if head[0] == "split":
        if (
            len(head) != 7
            or head[1] != "rotate"
            or head[3] != "mirror"
            or head[5] != "support"
        ):
            raise FormatError(
                "expected 'split rotate K mirror M support S'", line=n
            )
        rot, mirror, support = _ints([head[2], head[4], head[6]], n)
        n2, body2 = lines.take()
        parts = body2.split()
        if parts[0] != "bridge" or len(parts) < 2:
            raise FormatError("expected a bridge line", line=n2)
        bridge = tuple(_ints(parts[1:], n2))
        n3, body3 = lines.take()
        parts = body3.split()
        if parts[0] != "projected" or len(parts) < 2:
            raise FormatError("expected a projected line", line=n3)
        projected = tuple(_ints(parts[1:], n3))
        lines.expect("left")
        left = _parse_cert(lines)
        lines.expect("right")
        right = _parse_cert(lines)
        lines.expect("end")
        return Split(rot, mirror, support, bridge, projected, left, right)
    raise FormatError(f"expected 'chain' or 'split', got {head[0]!r}", line=n)
