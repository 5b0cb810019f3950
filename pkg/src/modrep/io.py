"""Text formats: group files, representation files and exact JSON documents."""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import GroupParseError, InputError
from .exact.cyclotomic import CycNumber
from .exact.finite_field import GF, get_field, is_prime
from .groups import Group, build_group

# -- group files -------------------------------------------------------------------------


@dataclass
class GroupSpec:
    degree: int
    generators: list[list[int]]  # 0-based image lists
    name: str | None = None

    def canonical_text(self) -> str:
        lines = [f"domain {self.degree}"]
        if self.name:
            lines.append(f"name {self.name}")
        for g in self.generators:
            lines.append("gen " + " ".join(str(x + 1) for x in g))
        return "\n".join(lines) + "\n"

    def build(self) -> Group:
        return build_group(self.generators, degree=self.degree, name=self.name)


_CYCLE_TOKEN = re.compile(r"\s*(\(|\)|\d+|,)")


def _parse_cycles(text: str, degree: int, line: int, offset: int) -> list[int]:
    perm = list(range(degree))
    seen: set[int] = set()
    pos = 0
    current: list[int] | None = None
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_TOKEN.match(text, pos)
        if not m:
            raise GroupParseError(f"unexpected character {text[pos]!r}", line, offset + pos + 1)
        tok = m.group(1)
        col = offset + m.start(1) + 1
        if tok == "(":
            if current is not None:
                raise GroupParseError("nested '('", line, col)
            current = []
        elif tok == ")":
            if current is None:
                raise GroupParseError("unmatched ')'", line, col)
            for a, b in zip(current, current[1:] + current[:1]):
                perm[a] = b
            current = None
        elif tok == ",":
            if current is None:
                raise GroupParseError("',' outside a cycle", line, col)
        else:
            if current is None:
                raise GroupParseError("point outside a cycle", line, col)
            x = int(tok)
            if not 1 <= x <= degree:
                raise GroupParseError(f"point {x} outside 1..{degree}", line, col)
            if x - 1 in seen:
                raise GroupParseError(f"point {x} repeated in one generator", line, col)
            seen.add(x - 1)
            current.append(x - 1)
        pos = m.end()
    if current is not None:
        raise GroupParseError("unterminated cycle", line, offset + len(text) + 1)
    return perm


def parse_group_text(text: str) -> GroupSpec:
    """Parse the group input format: "domain d", optional "name label", "gen <cycles>" lines."""
    degree = None
    name = None
    gens: list[tuple[int, str, int]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        indent = len(line) - len(stripped)
        key, _, rest = stripped.partition(" ")
        rest_col = indent + len(key) + 1
        if key == "domain":
            if degree is not None:
                raise GroupParseError("duplicate domain line", ln, indent + 1)
            try:
                degree = int(rest.strip())
            except ValueError:
                raise GroupParseError(f"domain size must be an integer, got {rest.strip()!r}", ln, rest_col + 1) from None
            if degree < 1:
                raise GroupParseError("domain size must be positive", ln, rest_col + 1)
        elif key == "name":
            name = rest.strip() or None
        elif key == "gen":
            gens.append((ln, rest, rest_col))
        else:
            raise GroupParseError(f"unknown directive {key!r}", ln, indent + 1)
    if degree is None:
        raise GroupParseError("missing 'domain <d>' line", 1, 1)
    perms = [_parse_cycles(body, degree, ln, col) for ln, body, col in gens]
    return GroupSpec(degree, perms, name)


def read_group_file(path: str) -> tuple[GroupSpec, str]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read group file {path}: {exc}") from None
    return parse_group_text(text), text


# -- representation files ------------------------------------------------------------------


def _entry_code(x, F: GF, where: str) -> int:
    if isinstance(x, bool):
        raise InputError(f"{where}: booleans are not field elements")
    if isinstance(x, int):
        if F.e != 1:
            if not 0 <= x < F.p:
                raise InputError(f"{where}: integer entries must lie in 0..{F.p - 1}")
        return x % F.p
    if isinstance(x, list):
        if len(x) != F.e or not all(isinstance(c, int) and 0 <= c < F.p for c in x):
            raise InputError(f"{where}: coefficient lists must have {F.e} entries in 0..{F.p - 1}")
        return sum(c * F.p**i for i, c in enumerate(x))
    raise InputError(f"{where}: unsupported entry {x!r}")


def parse_rep_text(text: str, p: int) -> tuple[GF, list[np.ndarray]]:
    """{"p": p, "e": e, "generators": [matrix, ...]} with entries ints or coefficient lists."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"representation file: {exc.msg} at line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(data, dict) or "generators" not in data:
        raise InputError('representation file must be an object with a "generators" list')
    fp = data.get("p", p)
    if fp != p:
        raise InputError(f"representation is over characteristic {fp}, but --p is {p}")
    e = data.get("e", 1)
    if not isinstance(e, int) or e < 1:
        raise InputError("e must be a positive integer")
    F = get_field(p, e)
    mats = []
    for k, M in enumerate(data["generators"]):
        if not isinstance(M, list) or not M or not all(isinstance(r, list) and len(r) == len(M) for r in M):
            raise InputError(f"generator {k}: expected a square matrix")
        mats.append(
            np.array([[_entry_code(x, F, f"generator {k} entry ({i + 1},{j + 1})") for j, x in enumerate(r)] for i, r in enumerate(M)], dtype=np.int64)
        )
    return F, mats


def matrix_to_json(F: GF, M: np.ndarray) -> list:
    if F.e == 1:
        return [[int(x) for x in row] for row in M]
    return [[[int(c) for c in F.digits[int(x)]] for x in row] for row in M]


# -- exact JSON ---------------------------------------------------------------------------


def _frac_json(x: Fraction):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cyc_to_json(c: CycNumber) -> dict:
    c = c.canonical()
    return {"conductor": c.M, "coefficients": [_frac_json(x) for x in c.coefficients]}


def cyc_from_json(d: dict) -> CycNumber:
    return CycNumber.from_coefficients(int(d["conductor"]), [Fraction(x) for x in d["coefficients"]])


def to_jsonable(obj):
    """Recursively convert results to JSON values; floats are refused."""
    if isinstance(obj, CycNumber):
        return cyc_to_json(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return _frac_json(obj)
    if isinstance(obj, float):
        raise TypeError("floating-point values are not allowed in result documents")
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit(doc: dict) -> str:
    return json.dumps(to_jsonable(doc), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _hook(d: dict):
    if set(d) == {"conductor", "coefficients"}:
        return cyc_from_json(d)
    return d


def parse(text: str) -> dict:
    """Inverse of emit: cyclotomic entries come back as CycNumber."""
    return json.loads(text, object_hook=_hook)


def input_hash(*texts: str) -> str:
    h = hashlib.sha256()
    for t in texts:
        h.update(t.encode("utf-8"))
        h.update(b"\0")
    return h.hexdigest()


def parse_polynomial(text: str) -> list[int]:
    """Integer polynomial in t such as "t^3 + 2*t^2 - 4", constant term first."""
    s = text.replace(" ", "")
    if not s:
        raise InputError("empty polynomial")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise InputError(f"cannot parse polynomial {text!r}")
    coeffs: dict[int, int] = {}
    for term in terms:
        m = re.fullmatch(r"([+-]?)(\d+)?(?:\*?t(?:\^(\d+))?)?", term)
        if not m or (m.group(2) is None and "t" not in term):
            raise InputError(f"cannot parse term {term!r} of {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        if "t" in term:
            k = int(m.group(3)) if m.group(3) else 1
        else:
            k = 0
        coeffs[k] = coeffs.get(k, 0) + sign * c
    deg = max(coeffs)
    return [coeffs.get(i, 0) for i in range(deg + 1)]


def check_prime(p: int) -> None:
    if not is_prime(p):
        raise InputError(f"{p} is not a prime")
