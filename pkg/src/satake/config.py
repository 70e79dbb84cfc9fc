"""Structured text configuration for groups and parameters.

Grammar: one `key = value` pair per line; `#` starts a comment; blank
lines are skipped.  Integer vectors and matrices are bracketed lists
([[0,1],[1,0]]), permutations use cycle notation on 1-based basis
indices ((1 2)(3 4)), `id` is the identity, and circle values are pairs
(q_exponent, argument) of rationals such as (1/2, 0).  Errors carry the
offending line number.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .circle import ExactCircle
from .kottwitz import TorusWithAction, cochar_torus, setting_for_datum, \
    setting_for_torus
from .matrices import IntMatrix, Lattice
from .presets import Preset, resolve_preset
from .rootdata import BasedRootDatum, DEFAULT_WEYL_CAP, galois_action, validate


class ConfigError(ValueError):
    """A configuration problem, with a line reference when available."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


_KEYS = ("name", "preset", "rank", "roots", "coroots", "simple",
         "tau", "sigma", "twist", "q", "values", "values2", "value")


@dataclass(frozen=True)
class GroupConfig:
    """Parsed configuration; structural fields are None when absent.

    tau/sigma are tagged unions: ("id",), ("perm", cycles) or
    ("matrix", IntMatrix).  For a bare torus the matrices act on the
    cocharacter lattice; with roots present they act on the character
    lattice.
    """

    name: str = ""
    preset: str = None
    rank: int = None
    roots: tuple = None
    coroots: tuple = None
    simple: tuple = None
    tau: tuple = None
    sigma: tuple = None
    twist: int = None
    q: int = None
    values: tuple = None
    values2: tuple = None
    value: ExactCircle = None


# --- low-level value parsing -------------------------------------------------

def _tokenize(text, line):
    i, n = 0, len(text)
    out = []
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "[](),":
            out.append((ch, i))
            i += 1
            continue
        if ch in "+-" or ch.isdigit():
            j = i + 1
            while j < n and (text[j].isdigit() or text[j] == "/"):
                j += 1
            frag = text[i:j]
            try:
                out.append((Fraction(frag), i))
            except (ValueError, ZeroDivisionError):
                raise ConfigError(f"bad number {frag!r}", line) from None
            i = j
            continue
        raise ConfigError(f"unexpected character {ch!r} at column {i + 1}", line)
    return out


def _parse_nested(text, line):
    """Bracketed/parenthesized nests of rationals -> nested tuples."""
    tokens = _tokenize(text, line)
    pos = 0

    def expr():
        nonlocal pos
        if pos >= len(tokens):
            raise ConfigError("unexpected end of value", line)
        tok, col = tokens[pos]
        if isinstance(tok, Fraction):
            pos += 1
            return tok
        if tok in "[(":
            close = "]" if tok == "[" else ")"
            pos += 1
            items = []
            if pos < len(tokens) and tokens[pos][0] == close:
                pos += 1
                return tuple(items)
            while True:
                items.append(expr())
                if pos >= len(tokens):
                    raise ConfigError(f"missing {close!r}", line)
                tok2, col2 = tokens[pos]
                pos += 1
                if tok2 == close:
                    return tuple(items)
                if tok2 != ",":
                    raise ConfigError(
                        f"expected ',' or {close!r} at column {col2 + 1}", line)
                if pos < len(tokens) and tokens[pos][0] == close:
                    raise ConfigError(
                        f"dangling ',' at column {tokens[pos][1] + 1}", line)
        raise ConfigError(f"unexpected {tok!r} at column {col + 1}", line)

    result = expr()
    if pos != len(tokens):
        raise ConfigError(
            f"trailing input at column {tokens[pos][1] + 1}", line)
    return result


def _as_int(value, line, what):
    if not isinstance(value, Fraction) or value.denominator != 1:
        raise ConfigError(f"{what} must be an integer", line)
    return int(value)


def _parse_int(text, line, what):
    return _as_int(_parse_nested(text, line), line, what)


def _parse_vectors(text, line, what):
    nested = _parse_nested(text, line)
    if not isinstance(nested, tuple):
        raise ConfigError(f"{what} must be a list of integer vectors", line)
    rows = []
    for row in nested:
        if not isinstance(row, tuple):
            raise ConfigError(f"{what} must be a list of integer vectors", line)
        rows.append(tuple(_as_int(v, line, f"{what} entry") for v in row))
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ConfigError(f"{what} rows have unequal lengths", line)
    return tuple(rows)


def _parse_ints(text, line, what):
    nested = _parse_nested(text, line)
    if not isinstance(nested, tuple):
        raise ConfigError(f"{what} must be a list of integers", line)
    return tuple(_as_int(v, line, f"{what} entry") for v in nested)


def _parse_circle(pair, line, what):
    if (not isinstance(pair, tuple) or len(pair) != 2
            or not all(isinstance(v, Fraction) for v in pair)):
        raise ConfigError(f"{what} must be a pair (q_exponent, argument)", line)
    return ExactCircle(pair[0], pair[1])


def _parse_values(text, line, what):
    nested = _parse_nested(text, line)
    if not isinstance(nested, tuple):
        raise ConfigError(f"{what} must be a list of (q_exponent, argument)"
                          " pairs", line)
    return tuple(_parse_circle(p, line, what) for p in nested)


def _parse_perm_or_matrix(text, line, what):
    text = text.strip()
    if text == "id":
        return ("id",)
    if text.startswith("["):
        mat = _parse_vectors(text, line, what)
        if not mat or len(mat) != len(mat[0]):
            raise ConfigError(f"{what} matrix must be square", line)
        return ("matrix", IntMatrix(mat))
    if text.startswith("("):
        cycles = []
        i = 0
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            if text[i] != "(":
                raise ConfigError(f"{what}: expected '(' in cycle notation",
                                  line)
            j = text.find(")", i)
            if j < 0:
                raise ConfigError(f"{what}: unclosed cycle", line)
            body = text[i + 1:j].replace(",", " ").split()
            try:
                cyc = tuple(int(b) for b in body)
            except ValueError:
                raise ConfigError(f"{what}: cycle entries must be integers",
                                  line) from None
            if not cyc or len(set(cyc)) != len(cyc) or min(cyc) < 1:
                raise ConfigError(f"{what}: bad cycle {text[i:j + 1]}", line)
            cycles.append(cyc)
            i = j + 1
        if not cycles:
            raise ConfigError(f"{what}: empty permutation", line)
        flat = [v for c in cycles for v in c]
        if len(set(flat)) != len(flat):
            raise ConfigError(f"{what}: cycles are not disjoint", line)
        return ("perm", tuple(cycles))
    raise ConfigError(f"{what} must be 'id', a matrix, or cycles", line)


def parse_config(text):
    """Parse configuration text into a GroupConfig.

    >>> parse_config("rank = 1\\ntau = [[-1]]").tau[0]
    'matrix'
    """
    fields = {}
    lines_seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", lineno)
        key, _, rest = line.partition("=")
        key = key.strip()
        rest = rest.strip()
        if key not in _KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in fields:
            raise ConfigError(f"duplicate key {key!r} (first at line"
                              f" {lines_seen[key]})", lineno)
        if not rest:
            raise ConfigError(f"empty value for {key!r}", lineno)
        lines_seen[key] = lineno
        if key in ("name", "preset"):
            fields[key] = rest
        elif key in ("rank", "twist", "q"):
            fields[key] = _parse_int(rest, lineno, key)
        elif key in ("roots", "coroots"):
            fields[key] = _parse_vectors(rest, lineno, key)
        elif key == "simple":
            fields[key] = _parse_ints(rest, lineno, key)
        elif key in ("tau", "sigma"):
            fields[key] = _parse_perm_or_matrix(rest, lineno, key)
        elif key in ("values", "values2"):
            fields[key] = _parse_values(rest, lineno, key)
        elif key == "value":
            fields[key] = _parse_circle(_parse_nested(rest, lineno), lineno,
                                        key)
    return GroupConfig(**fields)


# --- serialization ------------------------------------------------------------

def _render_matrix(m):
    return "[" + ",".join("[" + ",".join(str(v) for v in row) + "]"
                          for row in m.data) + "]"


def _render_circle(c):
    return f"({c.q_exponent},{c.argument})"


def _render_action(tagged):
    if tagged[0] == "id":
        return "id"
    if tagged[0] == "perm":
        return "".join("(" + " ".join(str(v) for v in c) + ")"
                       for c in tagged[1])
    return _render_matrix(tagged[1])


def serialize_config(config):
    """Canonical text form; parse_config(serialize_config(c)) == c."""
    out = []
    if config.name:
        out.append(f"name = {config.name}")
    if config.preset is not None:
        out.append(f"preset = {config.preset}")
    if config.rank is not None:
        out.append(f"rank = {config.rank}")
    if config.roots is not None:
        out.append("roots = [" + ",".join(
            "[" + ",".join(str(v) for v in r) + "]" for r in config.roots) + "]")
    if config.coroots is not None:
        out.append("coroots = [" + ",".join(
            "[" + ",".join(str(v) for v in r) + "]" for r in config.coroots) + "]")
    if config.simple is not None:
        out.append("simple = [" + ",".join(str(v) for v in config.simple) + "]")
    if config.tau is not None:
        out.append(f"tau = {_render_action(config.tau)}")
    if config.sigma is not None:
        out.append(f"sigma = {_render_action(config.sigma)}")
    if config.twist is not None:
        out.append(f"twist = {config.twist}")
    if config.q is not None:
        out.append(f"q = {config.q}")
    if config.values is not None:
        out.append("values = [" + ",".join(_render_circle(c)
                                           for c in config.values) + "]")
    if config.values2 is not None:
        out.append("values2 = [" + ",".join(_render_circle(c)
                                            for c in config.values2) + "]")
    if config.value is not None:
        out.append(f"value = {_render_circle(config.value)}")
    return "\n".join(out) + "\n"


# --- resolution ---------------------------------------------------------------

@dataclass(frozen=True)
class ResolvedGroup:
    """A config or preset turned into live objects.

    Exactly one of `datum` (with char-side tau/sigma matrices) or a bare
    torus is the source; `torus` is always the cocharacter-side action
    feeding the Kottwitz machine.
    """

    name: str
    datum: BasedRootDatum
    tau_char: IntMatrix
    sigma_char: IntMatrix
    twist: int
    torus: TorusWithAction
    q: int
    values: tuple = None
    values2: tuple = None
    value: ExactCircle = None

    def setting(self, cap=DEFAULT_WEYL_CAP):
        if self.datum is None:
            return setting_for_torus(self.torus)
        action = galois_action(self.datum, self.tau_char, self.sigma_char,
                               self.twist)
        return setting_for_datum(self.datum, action, cap=cap)


def _action_matrix(tagged, rank, what):
    if tagged is None or tagged[0] == "id":
        return IntMatrix.identity(rank)
    if tagged[0] == "matrix":
        m = tagged[1]
        if m.nrows != rank:
            raise ConfigError(f"{what} is {m.nrows}x{m.ncols} but the lattice"
                              f" has rank {rank}")
        return m
    cycles = tagged[1]
    image = list(range(rank))
    for cyc in cycles:
        if max(cyc) > rank:
            raise ConfigError(f"{what} permutes index {max(cyc)} but the"
                              f" lattice has rank {rank}")
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            image[a - 1] = b - 1
    return IntMatrix.from_columns([tuple(int(r == image[j]) for r in range(rank))
                                   for j in range(rank)], nrows=rank)


_STRUCTURAL = ("rank", "roots", "coroots", "simple")


def resolve(config=None, preset=None, q=None):
    """Turn a GroupConfig and/or preset name into a ResolvedGroup.

    `preset` and `q` (CLI flags) override the corresponding config keys;
    a config that names a preset may adjust tau/sigma/twist on a datum
    preset but cannot restate the structural keys.
    """
    config = config or GroupConfig()
    preset_name = preset or config.preset
    if q is None:
        q = config.q
    name = config.name

    if preset_name is not None:
        if any(getattr(config, k) is not None for k in _STRUCTURAL):
            raise ConfigError("a preset cannot be combined with explicit"
                              " rank/roots/coroots/simple keys")
        try:
            p = resolve_preset(preset_name, q=q)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        q = p.q
        if p.torus is not None:
            if config.tau is not None or config.sigma is not None \
                    or config.twist is not None:
                raise ConfigError("torus presets do not accept tau/sigma/twist"
                                  " overrides")
            return ResolvedGroup(name or p.name, None, None, None,
                                 p.torus.twist, p.torus, q,
                                 config.values, config.values2, config.value)
        datum = p.datum
        name = name or p.name
        rank = datum.rank
        tau = (_action_matrix(config.tau, rank, "tau") if config.tau is not None
               else (p.tau if p.tau is not None else IntMatrix.identity(rank)))
        sigma = (_action_matrix(config.sigma, rank, "sigma")
                 if config.sigma is not None
                 else (p.sigma if p.sigma is not None
                       else IntMatrix.identity(rank)))
        twist = config.twist if config.twist is not None else p.twist
    elif config.roots is not None or config.coroots is not None:
        if config.roots is None or config.coroots is None:
            raise ConfigError("roots and coroots must be given together")
        if config.simple is None:
            raise ConfigError("a root datum needs the simple key")
        if not config.roots:
            raise ConfigError("empty roots list; use a torus config instead")
        rank = len(config.roots[0])
        corank = len(config.coroots[0]) if config.coroots else rank
        if corank != rank:
            raise ConfigError("root and coroot vectors must have the same"
                              " length")
        if config.rank is not None and config.rank != rank:
            raise ConfigError(f"rank = {config.rank} does not match root"
                              f" vectors of length {rank}")
        if len(config.roots) != len(config.coroots):
            raise ConfigError("roots and coroots must have the same length")
        if any(i < 0 or i >= len(config.roots) for i in config.simple):
            raise ConfigError("simple indices out of range")
        datum = BasedRootDatum(Lattice(rank, "X"), config.roots,
                               Lattice(corank, "X^"), config.coroots,
                               config.simple, label=name or "custom")
        problems = validate(datum)
        if problems:
            raise ConfigError("invalid root datum: " + "; ".join(problems))
        tau = _action_matrix(config.tau, rank, "tau")
        sigma = _action_matrix(config.sigma, rank, "sigma")
        twist = config.twist if config.twist is not None else 1
    else:
        if config.rank is None:
            raise ConfigError("a torus config needs the rank key")
        if config.rank < 0:
            raise ConfigError("rank must be nonnegative")
        rank = config.rank
        tau = _action_matrix(config.tau, rank, "tau")
        sigma = _action_matrix(config.sigma, rank, "sigma")
        twist = config.twist if config.twist is not None else 1
        try:
            torus = TorusWithAction(Lattice(rank, name or "torus"), tau, sigma,
                                    twist=twist, label=name or "torus")
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return ResolvedGroup(name or "torus", None, None, None, twist, torus,
                             q, config.values, config.values2, config.value)

    try:
        action = galois_action(datum, tau, sigma, twist)
        torus = cochar_torus(datum, action)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return ResolvedGroup(name or (datum.label or "group"), datum,
                         tau, sigma, twist, torus, q,
                         config.values, config.values2, config.value)
