"""Line-oriented build scripts for intersection rings.

One statement per line; ``#`` starts a comment. The first statement must be
a ``base``. Words are separated by whitespace, so ``key=value`` values may
not contain spaces; ``slice`` and ``let`` take the rest of the line.

    base point
    base curve g=<int>
    base projective n=<int> [name=<NAME>]
    base surface quadric | dp6 | hirzebruch n=<int>
    projbundle rank=<int> c1=<expr> [c2=<expr|int>] [c3=...] [name=<NAME>]
    slice <expr>
    blowup_points n=<int> [prefix=<NAME>]
    blowup_curve g=<int> <GEN>.T=<int> ... K.T=<int> [name=<NAME>]
    let <NAME> = <expr>

A ``c_i=<int>`` equal to the base dimension means that many points.
"""

from __future__ import annotations

from . import chow, surfaces


class BuildError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


def _kv(words: list[str], lineno: int) -> dict[str, str]:
    out = {}
    for w in words:
        if "=" not in w:
            raise BuildError(f"expected key=value, got {w!r}", lineno)
        k, v = w.split("=", 1)
        if not k or not v:
            raise BuildError(f"empty key or value in {w!r}", lineno)
        if k in out:
            raise BuildError(f"duplicate key {k!r}", lineno)
        out[k] = v
    return out


def _int(d: dict, key: str, lineno: int, default=None) -> int:
    if key not in d:
        if default is None:
            raise BuildError(f"missing {key}=", lineno)
        return default
    try:
        return int(d.pop(key))
    except ValueError:
        raise BuildError(f"{key} must be an integer", lineno) from None


def _no_extra(d: dict, lineno: int):
    if d:
        raise BuildError(f"unknown keys {sorted(d)}", lineno)


def _chern_value(v: str):
    """An integer (number of points when the index equals the base
    dimension) or an expression in the base."""
    try:
        return int(v)
    except ValueError:
        return v


def build_ring(text: str) -> chow.IntersectionRing:
    """Execute a build script and return the final ring."""
    ring: chow.IntersectionRing | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if head == "base":
                if ring is not None:
                    raise BuildError("base given twice", lineno)
                ring = _base(rest.split(), lineno)
                continue
            if ring is None:
                raise BuildError("the first statement must be 'base'", lineno)
            if head == "projbundle":
                d = _kv(rest.split(), lineno)
                r = _int(d, "rank", lineno)
                name = d.pop("name", "xi")
                chern = []
                i = 1
                while f"c{i}" in d:
                    chern.append(_chern_value(d.pop(f"c{i}")))
                    i += 1
                _no_extra(d, lineno)
                ring = chow.proj_bundle(ring, r, chern, name=name)
            elif head == "slice":
                if not rest:
                    raise BuildError("slice needs a class", lineno)
                ring = chow.slice_hypersurface(ring, rest)
            elif head == "blowup_points":
                d = _kv(rest.split(), lineno)
                n = _int(d, "n", lineno)
                prefix = d.pop("prefix", "E")
                _no_extra(d, lineno)
                ring = chow.blow_up_points(ring, n, prefix=prefix)
            elif head == "blowup_curve":
                d = _kv(rest.split(), lineno)
                g = _int(d, "g", lineno)
                name = d.pop("name", "E")
                kt = _int(d, "K.T", lineno)
                pairings = {}
                for k in list(d):
                    if k.endswith(".T"):
                        pairings[k[:-2]] = _int(d, k, lineno)
                _no_extra(d, lineno)
                ring = chow.blow_up_curve(ring, g, pairings, kt, name=name)
            elif head == "let":
                name, eq, expr = rest.partition("=")
                name = name.strip()
                if not eq or not name.isidentifier() or not expr.strip():
                    raise BuildError("expected 'let NAME = expr'", lineno)
                ring = ring.with_aliases(**{name: expr.strip()})
            else:
                raise BuildError(f"unknown statement {head!r}", lineno)
        except BuildError:
            raise
        except ValueError as e:
            raise BuildError(str(e), lineno) from None
    if ring is None:
        raise BuildError("empty build script")
    return ring


def _base(words: list[str], lineno: int) -> chow.IntersectionRing:
    if not words:
        raise BuildError("base needs a kind", lineno)
    kind, args = words[0], words[1:]
    if kind == "point":
        _no_extra(_kv(args, lineno), lineno)
        return chow.point()
    if kind == "curve":
        d = _kv(args, lineno)
        g = _int(d, "g", lineno)
        _no_extra(d, lineno)
        return chow.curve(g)
    if kind == "projective":
        d = _kv(args, lineno)
        n = _int(d, "n", lineno)
        name = d.pop("name", "H")
        _no_extra(d, lineno)
        return chow.projective_space(n, name=name)
    if kind == "surface":
        if not args:
            raise BuildError("surface needs quadric, dp6 or hirzebruch", lineno)
        which, extra = args[0], _kv(args[1:], lineno)
        if which == "quadric":
            lat = surfaces.tautological_quadric_lattice()
        elif which == "dp6":
            lat = surfaces.dp6_lattice()
        elif which == "hirzebruch":
            lat = surfaces.hirzebruch_lattice(_int(extra, "n", lineno))
        else:
            raise BuildError(f"unknown surface {which!r}", lineno)
        _no_extra(extra, lineno)
        return chow.lattice_surface(lat)
    raise BuildError(f"unknown base kind {kind!r}", lineno)
