"""Built-in group presets, resolvable from short text names.

Datum-level presets give a based root datum plus character-lattice
matrices for tau and sigma; torus presets give the cocharacter-side
TorusWithAction directly.  Names are parsed from whitespace-separated
tokens, e.g. "split SL2", "induced e=2 f=1 q=3", "flip A3",
"triality D4", "unitary ramified 3", "norm-one", "torus n=2".
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .kottwitz import TorusWithAction, build_induced_torus
from .matrices import IntMatrix, Lattice
from .rootdata import BasedRootDatum, datum_from_simples


def standard_basis(n, i):
    return tuple(int(k == i) for k in range(n))


def flip_negate(n):
    """e_i -> -e_{n+1-i}: the standard outer involution of a GL_n lattice."""
    return IntMatrix([[-1 if i + j == n - 1 else 0 for j in range(n)]
                      for i in range(n)])


def split_gl(n):
    """GL_n on its standard character lattice Z^n."""
    if n < 2:
        raise ValueError("GL presets need n >= 2")
    simples = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        simples.append(tuple(v))
    return datum_from_simples(simples, simples, label=f"GL{n}")


def cartan_a(r):
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(r)]
            for i in range(r)]


def split_sl(n):
    """SL_n in fundamental-weight coordinates: X = weight lattice."""
    if n < 2:
        raise ValueError("SL presets need n >= 2")
    cartan = cartan_a(n - 1)
    simples = [tuple(cartan[i]) for i in range(n - 1)]
    cosimples = [standard_basis(n - 1, i) for i in range(n - 1)]
    return datum_from_simples(simples, cosimples, label=f"SL{n}")


def split_pgl(n):
    """PGL_n in simple-root coordinates: X = root lattice."""
    if n < 2:
        raise ValueError("PGL presets need n >= 2")
    cartan = cartan_a(n - 1)
    simples = [standard_basis(n - 1, i) for i in range(n - 1)]
    cosimples = [tuple(cartan[j][i] for j in range(n - 1))
                 for i in range(n - 1)]
    return datum_from_simples(simples, cosimples, label=f"PGL{n}")


def split_sp(n):
    """Sp_n (n = 2m) on Z^m: long simple root 2 e_m."""
    if n < 4 or n % 2:
        raise ValueError("Sp presets need even n >= 4")
    m = n // 2
    simples, cosimples = [], []
    for i in range(m - 1):
        v = [0] * m
        v[i], v[i + 1] = 1, -1
        simples.append(tuple(v))
        cosimples.append(tuple(v))
    simples.append(tuple(2 * x for x in standard_basis(m, m - 1)))
    cosimples.append(standard_basis(m, m - 1))
    return datum_from_simples(simples, cosimples, label=f"Sp{n}")


def split_so(n):
    """SO_n on Z^m (m = floor(n/2)); type B for odd n, D for even n."""
    if n < 5:
        raise ValueError("SO presets need n >= 5")
    m = n // 2
    simples, cosimples = [], []
    for i in range(m - 1):
        v = [0] * m
        v[i], v[i + 1] = 1, -1
        simples.append(tuple(v))
        cosimples.append(tuple(v))
    if n % 2:
        simples.append(standard_basis(m, m - 1))
        cosimples.append(tuple(2 * x for x in standard_basis(m, m - 1)))
    else:
        v = [0] * m
        v[m - 2], v[m - 1] = 1, 1
        simples.append(tuple(v))
        cosimples.append(tuple(v))
    return datum_from_simples(simples, cosimples, label=f"SO{n}")


def adjoint_d4():
    """Adjoint D4 in simple-root coordinates (triality lives here)."""
    cartan = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
    simples = [standard_basis(4, i) for i in range(4)]
    cosimples = [tuple(cartan[j][i] for j in range(4)) for i in range(4)]
    return datum_from_simples(simples, cosimples, label="D4 adjoint")


def d4_flip_matrix():
    """Swap of the two fork nodes of D4 on the SO_8 lattice: e_4 -> -e_4."""
    return IntMatrix.diagonal([1, 1, 1, -1])


def d4_triality_matrix():
    """Order-3 rotation of the D4 fork in simple-root coordinates:
    alpha_1 -> alpha_3 -> alpha_4 -> alpha_1, alpha_2 fixed."""
    cycle = {0: 2, 2: 3, 3: 0, 1: 1}
    return IntMatrix.from_columns([standard_basis(4, cycle[j])
                                   for j in range(4)], nrows=4)


def norm_one_ramified_quadratic():
    """Norm-one torus of a ramified quadratic extension: X_* = Z, tau = -1."""
    return TorusWithAction(Lattice(1, "norm-one"), IntMatrix([[-1]]),
                           IntMatrix.identity(1), label="norm-one")


def split_torus(n):
    return TorusWithAction(Lattice(n, "split torus"), IntMatrix.identity(n),
                           IntMatrix.identity(n), label=f"torus n={n}")


@dataclass(frozen=True)
class Preset:
    """A resolved preset: either a datum with char-side action matrices,
    or a bare torus with its cocharacter action."""

    name: str
    datum: BasedRootDatum = None
    tau: IntMatrix = None       # on the datum's character lattice; None = id
    sigma: IntMatrix = None
    twist: int = 1
    torus: TorusWithAction = None
    q: int = None


_SPLIT = {"GL": split_gl, "SL": split_sl, "PGL": split_pgl,
          "Sp": split_sp, "SO": split_so}


def _split_keyvals(tokens):
    plain, kv = [], {}
    for t in tokens:
        if "=" in t:
            k, _, v = t.partition("=")
            if not k or not v:
                raise ValueError(f"malformed token {t!r}")
            if k in kv:
                raise ValueError(f"repeated token {k!r}")
            kv[k] = v
        else:
            plain.append(t)
    return plain, kv


def _int(kv, key, required=False):
    if key not in kv:
        if required:
            raise ValueError(f"preset needs {key}=...")
        return None
    try:
        return int(kv[key])
    except ValueError:
        raise ValueError(f"{key} must be an integer, got {kv[key]!r}") from None


def resolve_preset(text, q=None):
    """Parse a preset name into a Preset; `q` overrides any embedded q=."""
    tokens = text.split()
    if not tokens:
        raise ValueError("empty preset name")
    plain, kv = _split_keyvals(tokens)
    if q is None:
        q = _int(kv, "q")
    family = plain[0]

    if family == "split" and len(plain) == 2:
        m = re.fullmatch(r"([A-Za-z]+)(\d+)", plain[1])
        if not m or m.group(1) not in _SPLIT:
            raise ValueError(f"unknown split preset {plain[1]!r}")
        datum = _SPLIT[m.group(1)](int(m.group(2)))
        return Preset(name=text, datum=datum, q=q)

    if family == "induced" and len(plain) == 1:
        e = _int(kv, "e", required=True)
        f = _int(kv, "f", required=True)
        if q is None:
            raise ValueError("induced preset needs q=...")
        return Preset(name=text, torus=build_induced_torus(e, f, q), q=q)

    if family == "norm-one" and len(plain) == 1:
        return Preset(name=text, torus=norm_one_ramified_quadratic(), q=q)

    if family == "torus" and len(plain) == 1:
        n = _int(kv, "n", required=True)
        if n < 0:
            raise ValueError("torus rank must be nonnegative")
        return Preset(name=text, torus=split_torus(n), q=q)

    if family == "flip" and len(plain) == 2:
        m = re.fullmatch(r"A(\d+)", plain[1])
        if m:
            n = int(m.group(1))
            if n < 2:
                raise ValueError("flip needs A2 or higher")
            return Preset(name=text, datum=split_gl(n + 1),
                          tau=flip_negate(n + 1), q=q)
        if plain[1] == "D4":
            return Preset(name=text, datum=split_so(8),
                          tau=d4_flip_matrix(), q=q)
        raise ValueError(f"unknown flip preset {plain[1]!r}")

    if family == "triality" and len(plain) == 2 and plain[1] == "D4":
        return Preset(name=text, datum=adjoint_d4(),
                      tau=d4_triality_matrix(), q=q)

    if family == "unitary" and len(plain) == 3 and plain[1] in ("ramified",
                                                                "unramified"):
        try:
            n = int(plain[2])
        except ValueError:
            raise ValueError("unitary preset needs a rank, e.g."
                             " 'unitary ramified 3'") from None
        if n < 2:
            raise ValueError("unitary presets need n >= 2")
        datum = split_gl(n)
        if plain[1] == "ramified":
            return Preset(name=text, datum=datum, tau=flip_negate(n), q=q)
        return Preset(name=text, datum=datum, sigma=flip_negate(n), q=q)

    raise ValueError(f"unknown preset {text!r}")
