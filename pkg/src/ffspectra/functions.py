"""Functions under analysis over GF(p^n) and their difference operators.

Four variants: power maps X^d, the map X^(-1) + Tr(X^2/(X+1)), the map
1/(X + gamma*Tr(X^(2^t+1))), and explicit value tables.  All division follows
the global convention inv(0) = 0.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction

import numpy as np

from .field import Field, FieldElement, FieldError


class FunctionError(ValueError):
    """Invalid function parameters or unparseable function text."""


def canonical_exponent(q: int, d: int) -> int:
    """Reduce d to the canonical representative: 0, or a value in [1, q-1]."""
    if d == 0:
        return 0
    return (d - 1) % (q - 1) + 1


class FunctionUnderTest:
    """A fixed function F: GF(p^n) -> GF(p^n); immutable after validation."""

    field: Field

    def eval(self, x: FieldElement) -> FieldElement:
        return self.field.from_code(self.eval_code(x.code))

    def __call__(self, x: FieldElement) -> FieldElement:
        return self.eval(x)

    def eval_code(self, x: int) -> int:
        raise NotImplementedError

    def table(self) -> np.ndarray:
        """Value table FT with FT[x] = code of F(x); built once, then cached."""
        ft = getattr(self, "_ft", None)
        if ft is None:
            ft = self._build_table()
            self._ft = ft
        return ft

    def _build_table(self) -> np.ndarray:
        return np.array([self.eval_code(x) for x in range(self.field.q)], dtype=np.int64)

    def text(self) -> str:
        raise NotImplementedError

    def payload(self):
        """Picklable recipe for rebuilding this function in a worker process."""
        return ("text", self.text())

    def __repr__(self):
        return f"<{self.text()} over GF({self.field.p}^{self.field.n})>"


class Monomial(FunctionUnderTest):
    """Power map F(X) = X^d with 0^d = 0 for d != 0 and 0^0 = 1."""

    def __init__(self, field: Field, d: int):
        self.field = field
        self.d = canonical_exponent(field.q, int(d))

    def eval_code(self, x: int) -> int:
        return self.field.pow_code(x, self.d)

    def _build_table(self) -> np.ndarray:
        return self.field.vpow(np.arange(self.field.q, dtype=np.int64), self.d)

    def text(self) -> str:
        return f"monomial:d={self.d}"


class InversePlusTrace(FunctionUnderTest):
    """F(X) = X^(-1) + Tr(X^2 / (X+1)) over GF(2^n); F(1) = 1 via inv(0) = 0."""

    def __init__(self, field: Field):
        if not field.char2:
            raise FunctionError("inv-plus-trace requires characteristic 2")
        self.field = field

    def eval_code(self, x: int) -> int:
        f = self.field
        arg = f.mul_code(f.mul_code(x, x), f.inv_code(x ^ 1))
        return f.inv_code(x) ^ f.trace_code(arg)

    def _build_table(self) -> np.ndarray:
        f = self.field
        t = f.tables()
        X = np.arange(f.q, dtype=np.int64)
        arg = f.vmul(f.vmul(X, X), t.inv[X ^ 1])
        return t.inv[X] ^ t.tr[arg]

    def text(self) -> str:
        return "inv-plus-trace"


class GammaTraceInverse(FunctionUnderTest):
    """F(X) = 1 / (X + gamma * Tr(X^(2^t+1))) over GF(2^n).

    Requires 0 < t < n, gamma != 0 with gamma^(2^(2t)) = gamma and
    Tr(gamma^(2^t+1)) = 0; all checked at construction.
    """

    def __init__(self, field: Field, t: int, gamma: FieldElement):
        if not field.char2:
            raise FunctionError("gamma-trace-inverse requires characteristic 2")
        if not 0 < t < field.n:
            raise FunctionError(f"t={t} must satisfy 0 < t < n={field.n}")
        gamma = field.element(gamma)
        if gamma.code == 0:
            raise FunctionError("gamma must be nonzero")
        g = gamma.code
        if field.pow_code(g, 2 ** (2 * t)) != g:
            raise FunctionError("gamma must satisfy gamma^(2^(2t)) = gamma")
        if field.trace_code(field.pow_code(g, 2 ** t + 1)) != 0:
            raise FunctionError("gamma must satisfy trace(gamma^(2^t+1)) = 0")
        self.field = field
        self.t = t
        self.gamma = gamma

    def eval_code(self, x: int) -> int:
        f = self.field
        tr = f.trace_code(f.pow_code(x, 2 ** self.t + 1))
        den = x ^ (self.gamma.code if tr else 0)
        return f.inv_code(den)

    def _build_table(self) -> np.ndarray:
        f = self.field
        t = f.tables()
        X = np.arange(f.q, dtype=np.int64)
        trv = t.tr[f.vpow(X, 2 ** self.t + 1)]
        den = X ^ np.where(trv == 1, self.gamma.code, 0)
        return t.inv[den]

    def text(self) -> str:
        return f"gamma-trace-inverse:t={self.t},gamma={self.gamma.text}"


class TableFunction(FunctionUnderTest):
    """Explicit value table: entry i is F(element with code i)."""

    def __init__(self, field: Field, values):
        try:
            vals = [field.element(v).code for v in values]
        except FieldError as e:
            raise FunctionError(f"bad table entry: {e}") from e
        if len(vals) != field.q:
            raise FunctionError(f"table needs exactly q={field.q} entries, got {len(vals)}")
        self.field = field
        self._codes = tuple(vals)

    def eval_code(self, x: int) -> int:
        return self._codes[x]

    def _build_table(self) -> np.ndarray:
        return np.array(self._codes, dtype=np.int64)

    def text(self) -> str:
        return "table:" + ",".join(str(c) for c in self._codes)

    def payload(self):
        return ("table", self._codes)


def function_from_payload(field: Field, payload) -> FunctionUnderTest:
    kind, data = payload
    if kind == "table":
        return TableFunction(field, data)
    return parse_function(field, data)


# ---------------------------------------------------------------------------
# exponent expressions and the function-text grammar
# ---------------------------------------------------------------------------

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def eval_exponent_expr(text: str, field: Field, k: int | None = None,
                       t: int | None = None) -> int:
    """Exact integer evaluation of an exponent formula in p, n, q (and k, t).

    Supports + - * / ^ and parentheses; every division must be exact by the
    time the whole expression is evaluated (e.g. "(2*q-1)/3", "(p^k+1)/2",
    "(3^n-1)/2+2", "2^t-1").  Implicit products like "2q" are accepted.
    """
    names = {"p": Fraction(field.p), "n": Fraction(field.n), "q": Fraction(field.q)}
    if k is not None:
        names["k"] = Fraction(k)
    if t is not None:
        names["t"] = Fraction(t)
    src = re.sub(r"(\d)([pnqkt])\b", r"\1*\2", text.replace("^", "**").strip())

    def ev(nd) -> Fraction:
        if isinstance(nd, ast.BinOp):
            if isinstance(nd.op, ast.Pow):
                base, e = ev(nd.left), ev(nd.right)
                if e.denominator != 1:
                    raise FunctionError(f"non-integer power in exponent expression {text!r}")
                ei = int(e)
                return Fraction(1) / base ** (-ei) if ei < 0 else base ** ei
            fn = _BINOPS.get(type(nd.op))
            if fn is None:
                raise FunctionError(f"unsupported operator in exponent expression {text!r}")
            try:
                return fn(ev(nd.left), ev(nd.right))
            except ZeroDivisionError:
                raise FunctionError(f"division by zero in exponent expression {text!r}") from None
        if isinstance(nd, ast.UnaryOp) and isinstance(nd.op, (ast.USub, ast.UAdd)):
            v = ev(nd.operand)
            return -v if isinstance(nd.op, ast.USub) else v
        if isinstance(nd, ast.Constant) and isinstance(nd.value, int):
            return Fraction(nd.value)
        if isinstance(nd, ast.Name):
            if nd.id in names:
                return names[nd.id]
            raise FunctionError(f"unknown name {nd.id!r} in exponent expression {text!r}")
        raise FunctionError(f"unsupported syntax in exponent expression {text!r}")

    try:
        node = ast.parse(src, mode="eval").body
    except SyntaxError as e:
        raise FunctionError(f"bad exponent expression {text!r}") from e
    val = ev(node)
    if val.denominator != 1:
        raise FunctionError(f"exponent expression {text!r} is not an integer "
                            f"(got {val}); check the divisibility hypothesis")
    return int(val)


def parse_function(field: Field, text: str, k: int | None = None,
                   t: int | None = None) -> FunctionUnderTest:
    """Parse the CLI function grammar.

    monomial:d=<int or formula> | inv-plus-trace |
    gamma-trace-inverse:t=<int>,gamma=<coeffs> | table:@<path>
    """
    s = text.strip()
    if s == "inv-plus-trace":
        return InversePlusTrace(field)
    if s.startswith("monomial:"):
        body = s[len("monomial:"):]
        if not body.startswith("d="):
            raise FunctionError(f"monomial spec must look like monomial:d=..., got {text!r}")
        return Monomial(field, eval_exponent_expr(body[2:], field, k=k, t=t))
    if s.startswith("gamma-trace-inverse:"):
        body = s[len("gamma-trace-inverse:"):]
        m = re.fullmatch(r"t=(\d+),gamma=([0-9,\- ]+)", body)
        if not m:
            raise FunctionError(
                f"gamma-trace-inverse spec must look like gamma-trace-inverse:t=<int>,gamma=<coeffs>, got {text!r}")
        try:
            gamma = field.from_text(m.group(2))
        except FieldError as e:
            raise FunctionError(str(e)) from e
        return GammaTraceInverse(field, int(m.group(1)), gamma)
    if s.startswith("table:"):
        body = s[len("table:"):]
        if body.startswith("@"):
            path = body[1:]
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    body = fh.read()
            except OSError as e:
                raise FunctionError(f"cannot read table file {path!r}: {e}") from e
        entries = [tok for tok in re.split(r"[,\s]+", body) if tok]
        try:
            codes = [int(tok) for tok in entries]
        except ValueError as e:
            raise FunctionError(
                f"table entries must be integer element codes: {e}") from e
        try:
            values = [field.from_code(c) for c in codes]
        except FieldError as e:
            raise FunctionError(f"bad table entry: {e}") from e
        return TableFunction(field, values)
    raise FunctionError(f"unparseable function text {text!r}")


# ---------------------------------------------------------------------------
# difference operators
# ---------------------------------------------------------------------------

def second_order_diff(F: FunctionUnderTest, a: FieldElement, b: FieldElement,
                      x: FieldElement) -> FieldElement:
    """F(x+a+b) - F(x+b) - F(x+a) + F(x)."""
    return F.eval(x + a + b) - F.eval(x + b) - F.eval(x + a) + F.eval(x)


def gapn_derivative(F: FunctionUnderTest, a: FieldElement, x: FieldElement) -> FieldElement:
    """Sum of F(x + a*i) over all i in the prime subfield."""
    f = F.field
    acc = f.zero
    for i in range(f.p):
        acc = acc + F.eval(x + a * f.from_code(i))
    return acc
