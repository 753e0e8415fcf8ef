"""Analytic functions as expression trees.

A :class:`FunctionSpec` is built from complex constants, the variable ``z``,
the four arithmetic operations, integer powers and the principal branches of
``exp``, ``log`` and ``sqrt``. Trees evaluate exactly in complex floating
point and also propagate truncated Taylor series (jets), which supplies the
derivative data needed for Hermite divided differences at repeated nodes.

Textual grammar
---------------
Expressions use Python syntax restricted to::

    expr   := expr ('+' | '-' | '*' | '/') expr | '-' expr | '+' expr
            | expr ('**' | '^') INTEGER | NAME '(' expr ')' | NUMBER | 'z' | '(' expr ')'
    NAME   := 'exp' | 'log' | 'sqrt'
    NUMBER := any Python int/float/imaginary literal, plus the names 'i', 'j', 'pi', 'e'

so ``1/((z-2)*(z-3))``, ``exp(z)/(z-2)``, ``log(1-z)`` and ``(1+2j)*z^3`` are all
valid. Subtrees made only of constants are folded at parse time.
"""

from __future__ import annotations

import ast
import cmath
import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from mpade.errors import ExpressionSyntaxError, NodeOrderTooHigh, SingularEvaluation

SING_TOL = 1e-14
MAX_JET_ORDER = 64

__all__ = [
    "FunctionSpec",
    "Const",
    "Var",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Neg",
    "Pow",
    "Func",
    "Jet",
    "parse",
    "render",
    "evaluate",
    "jet",
    "compose",
    "divided_differences",
    "hermite_table",
]


# --------------------------------------------------------------------------
# tree


class FunctionSpec:
    """Base class of expression nodes; supports ``f(z)`` and operator sugar."""

    def __call__(self, z):
        return evaluate(self, z)

    def __str__(self):
        return render(self)

    def __add__(self, other):
        return Add(self, _lift(other))

    def __radd__(self, other):
        return Add(_lift(other), self)

    def __sub__(self, other):
        return Sub(self, _lift(other))

    def __rsub__(self, other):
        return Sub(_lift(other), self)

    def __mul__(self, other):
        return Mul(self, _lift(other))

    def __rmul__(self, other):
        return Mul(_lift(other), self)

    def __truediv__(self, other):
        return Div(self, _lift(other))

    def __rtruediv__(self, other):
        return Div(_lift(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, k):
        return Pow(self, int(k))


def _lift(x) -> FunctionSpec:
    return x if isinstance(x, FunctionSpec) else Const(complex(x))


@dataclass(frozen=True, eq=True)
class Const(FunctionSpec):
    value: complex


@dataclass(frozen=True, eq=True)
class Var(FunctionSpec):
    pass


@dataclass(frozen=True, eq=True)
class Add(FunctionSpec):
    left: FunctionSpec
    right: FunctionSpec


@dataclass(frozen=True, eq=True)
class Sub(FunctionSpec):
    left: FunctionSpec
    right: FunctionSpec


@dataclass(frozen=True, eq=True)
class Mul(FunctionSpec):
    left: FunctionSpec
    right: FunctionSpec


@dataclass(frozen=True, eq=True)
class Div(FunctionSpec):
    left: FunctionSpec
    right: FunctionSpec


@dataclass(frozen=True, eq=True)
class Neg(FunctionSpec):
    arg: FunctionSpec


@dataclass(frozen=True, eq=True)
class Pow(FunctionSpec):
    base: FunctionSpec
    exponent: int


FUNCTIONS = ("exp", "log", "sqrt")


@dataclass(frozen=True, eq=True)
class Func(FunctionSpec):
    name: str
    arg: FunctionSpec

    def __post_init__(self):
        if self.name not in FUNCTIONS:
            raise ValueError(f"unknown function {self.name!r}")


Z = Var()


def compose(f: FunctionSpec, g: FunctionSpec) -> FunctionSpec:
    """The tree of ``f(g(z))``: every occurrence of ``z`` in ``f`` replaced by ``g``."""
    if isinstance(f, Var):
        return g
    if isinstance(f, Const):
        return f
    if isinstance(f, (Add, Sub, Mul, Div)):
        return type(f)(compose(f.left, g), compose(f.right, g))
    if isinstance(f, Neg):
        return Neg(compose(f.arg, g))
    if isinstance(f, Pow):
        return Pow(compose(f.base, g), f.exponent)
    if isinstance(f, Func):
        return Func(f.name, compose(f.arg, g))
    raise TypeError(f"not an expression node: {f!r}")


# --------------------------------------------------------------------------
# parsing and rendering

_NAMES = {"z": Z, "i": Const(1j), "j": Const(1j), "pi": Const(complex(math.pi)), "e": Const(complex(math.e))}

_BINOPS = {ast.Add: Add, ast.Sub: Sub, ast.Mult: Mul, ast.Div: Div}


def _fold(node: FunctionSpec) -> FunctionSpec:
    """Collapse a node whose children are all constants."""
    try:
        if isinstance(node, (Add, Sub, Mul, Div)) and isinstance(node.left, Const) and isinstance(node.right, Const):
            return Const(complex(evaluate(node, 0.0)))
        if isinstance(node, Neg) and isinstance(node.arg, Const):
            return Const(-node.arg.value)
        if isinstance(node, Pow) and isinstance(node.base, Const):
            return Const(complex(evaluate(node, 0.0)))
        if isinstance(node, Func) and isinstance(node.arg, Const):
            return Const(complex(evaluate(node, 0.0)))
    except SingularEvaluation:
        pass
    return node


def _int_exponent(node: ast.AST, text: str) -> int:
    sign = 1
    while isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        if isinstance(node.op, ast.USub):
            sign = -sign
        node = node.operand
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return sign * node.value
    if isinstance(node, ast.Constant) and isinstance(node.value, float) and node.value.is_integer():
        return sign * int(node.value)
    raise ExpressionSyntaxError(f"only integer powers are supported in {text!r}")


def _convert(node: ast.AST, text: str) -> FunctionSpec:
    if isinstance(node, ast.Expression):
        return _convert(node.body, text)
    if isinstance(node, ast.Constant):
        v = node.value
        if isinstance(v, bool) or not isinstance(v, (int, float, complex)):
            raise ExpressionSyntaxError(f"unsupported literal {v!r} in {text!r}")
        return Const(complex(v))
    if isinstance(node, ast.Name):
        if node.id not in _NAMES:
            raise ExpressionSyntaxError(f"unknown name {node.id!r} in {text!r}")
        return _NAMES[node.id]
    if isinstance(node, ast.UnaryOp):
        arg = _convert(node.operand, text)
        if isinstance(node.op, ast.USub):
            return _fold(Neg(arg))
        if isinstance(node.op, ast.UAdd):
            return arg
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            return _fold(Pow(_convert(node.left, text), _int_exponent(node.right, text)))
        cls = _BINOPS.get(type(node.op))
        if cls is not None:
            return _fold(cls(_convert(node.left, text), _convert(node.right, text)))
    if isinstance(node, ast.Call):
        if (
            isinstance(node.func, ast.Name)
            and node.func.id in FUNCTIONS
            and len(node.args) == 1
            and not node.keywords
        ):
            return _fold(Func(node.func.id, _convert(node.args[0], text)))
        raise ExpressionSyntaxError(f"unsupported call in {text!r}")
    raise ExpressionSyntaxError(f"unsupported syntax {type(node).__name__} in {text!r}")


# "2i", "1.5e-3i": the imaginary suffix i is accepted alongside Python's j
_IMAG_SUFFIX = re.compile(r"(?<![\w.])(\d+\.?\d*(?:[eE][+-]?\d+)?)i\b")


def parse(text: str) -> FunctionSpec:
    """Parse the textual grammar into a tree.

    Raises
    ------
    ExpressionSyntaxError
        On malformed input or constructs outside the grammar.
    """
    if not isinstance(text, str) or not text.strip():
        raise ExpressionSyntaxError("empty expression")
    src = _IMAG_SUFFIX.sub(r"\1j", text.replace("^", "**"))
    try:
        tree = ast.parse(src.strip(), mode="eval")
    except SyntaxError as exc:
        raise ExpressionSyntaxError(f"cannot parse {text!r}: {exc.msg}") from None
    return _convert(tree, text)


def _render_const(c: complex) -> str:
    if c.imag == 0.0:
        s = repr(c.real)
        return f"({s})" if c.real < 0 or s.startswith("-") else s
    if c.real == 0.0:
        s = repr(c.imag) + "j"
        return f"({s})" if c.imag < 0 else s
    return f"({c.real!r}{c.imag:+}j)".replace("+-", "-")


def render(f: FunctionSpec) -> str:
    """Fully parenthesised text that :func:`parse` maps back to the same tree."""
    if isinstance(f, Var):
        return "z"
    if isinstance(f, Const):
        return _render_const(f.value)
    if isinstance(f, (Add, Sub, Mul, Div)):
        op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(f)]
        return f"({render(f.left)} {op} {render(f.right)})"
    if isinstance(f, Neg):
        return f"(-{render(f.arg)})"
    if isinstance(f, Pow):
        e = f"({f.exponent})" if f.exponent < 0 else str(f.exponent)
        return f"({render(f.base)}**{e})"
    if isinstance(f, Func):
        return f"{f.name}({render(f.arg)})"
    raise TypeError(f"not an expression node: {f!r}")


# --------------------------------------------------------------------------
# pointwise evaluation


def _check_nonzero(x, what: str):
    if np.any(np.abs(x) <= SING_TOL):
        raise SingularEvaluation(f"{what} of a value within {SING_TOL:g} of zero")


def _eval(f: FunctionSpec, z):
    if isinstance(f, Var):
        return z
    if isinstance(f, Const):
        return np.full_like(z, f.value)
    if isinstance(f, Add):
        return _eval(f.left, z) + _eval(f.right, z)
    if isinstance(f, Sub):
        return _eval(f.left, z) - _eval(f.right, z)
    if isinstance(f, Mul):
        return _eval(f.left, z) * _eval(f.right, z)
    if isinstance(f, Div):
        den = _eval(f.right, z)
        _check_nonzero(den, "division")
        return _eval(f.left, z) / den
    if isinstance(f, Neg):
        return -_eval(f.arg, z)
    if isinstance(f, Pow):
        b = _eval(f.base, z)
        if f.exponent < 0:
            _check_nonzero(b, "negative power")
        return b ** f.exponent
    if isinstance(f, Func):
        a = _eval(f.arg, z)
        if f.name == "exp":
            return np.exp(a)
        if f.name == "log":
            _check_nonzero(a, "log")
            return np.log(a)
        return np.sqrt(a)
    raise TypeError(f"not an expression node: {f!r}")


def evaluate(f: FunctionSpec, z):
    """Evaluate ``f`` at a scalar or array of complex points.

    Raises
    ------
    SingularEvaluation
        When a division, negative power or log meets a value of modulus
        at most ``SING_TOL``.
    """
    za = np.asarray(z, dtype=complex)
    with np.errstate(all="ignore"):
        out = _eval(f, za)
    if not np.all(np.isfinite(out)):
        raise SingularEvaluation("non-finite value during evaluation")
    return complex(out) if out.ndim == 0 else out


# --------------------------------------------------------------------------
# jets


@dataclass(frozen=True)
class Jet:
    """Truncated Taylor expansion ``sum_k coeffs[k] (z - center)**k``."""

    center: complex
    coeffs: np.ndarray

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


def _jmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)[: a.size]


def _jdiv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if abs(b[0]) <= SING_TOL:
        raise SingularEvaluation("division of a jet with vanishing constant term")
    c = np.zeros_like(a)
    for j in range(a.size):
        c[j] = (a[j] - np.dot(b[1 : j + 1], c[j - 1 :: -1][:j])) / b[0]
    return c


def _jpow(a: np.ndarray, k: int) -> np.ndarray:
    if k < 0:
        one = np.zeros_like(a)
        one[0] = 1.0
        return _jdiv(one, _jpow(a, -k))
    out = np.zeros_like(a)
    out[0] = 1.0
    base = a
    while k:
        if k & 1:
            out = _jmul(out, base)
        k >>= 1
        if k:
            base = _jmul(base, base)
    return out


def _jexp(a: np.ndarray) -> np.ndarray:
    e = np.zeros_like(a)
    e[0] = cmath.exp(a[0])
    i = np.arange(a.size)
    for j in range(1, a.size):
        e[j] = np.dot(i[1 : j + 1] * a[1 : j + 1], e[j - 1 :: -1][:j]) / j
    return e


def _jlog(a: np.ndarray) -> np.ndarray:
    if abs(a[0]) <= SING_TOL:
        raise SingularEvaluation("log of a jet with vanishing constant term")
    out = np.zeros_like(a)
    out[0] = cmath.log(a[0])
    i = np.arange(a.size)
    for j in range(1, a.size):
        s = np.dot(i[1:j] * out[1:j], a[j - 1 : 0 : -1]) if j > 1 else 0.0
        out[j] = (a[j] - s / j) / a[0]
    return out


def _jsqrt(a: np.ndarray) -> np.ndarray:
    s0 = cmath.sqrt(a[0])
    if abs(s0) <= SING_TOL and a.size > 1:
        raise SingularEvaluation("sqrt jet at a branch point")
    s = np.zeros_like(a)
    s[0] = s0
    for j in range(1, a.size):
        s[j] = (a[j] - np.dot(s[1:j], s[j - 1 : 0 : -1])) / (2 * s0)
    return s


def _jet(f: FunctionSpec, zj: np.ndarray) -> np.ndarray:
    if isinstance(f, Var):
        return zj
    if isinstance(f, Const):
        out = np.zeros_like(zj)
        out[0] = f.value
        return out
    if isinstance(f, Add):
        return _jet(f.left, zj) + _jet(f.right, zj)
    if isinstance(f, Sub):
        return _jet(f.left, zj) - _jet(f.right, zj)
    if isinstance(f, Mul):
        return _jmul(_jet(f.left, zj), _jet(f.right, zj))
    if isinstance(f, Div):
        return _jdiv(_jet(f.left, zj), _jet(f.right, zj))
    if isinstance(f, Neg):
        return -_jet(f.arg, zj)
    if isinstance(f, Pow):
        return _jpow(_jet(f.base, zj), f.exponent)
    if isinstance(f, Func):
        a = _jet(f.arg, zj)
        return {"exp": _jexp, "log": _jlog, "sqrt": _jsqrt}[f.name](a)
    raise TypeError(f"not an expression node: {f!r}")


def jet(f: FunctionSpec, center: complex, order: int) -> Jet:
    """Taylor coefficients ``c_0 .. c_order`` of ``f`` about ``center``."""
    if order < 0:
        raise ValueError("order must be >= 0")
    zj = np.zeros(order + 1, dtype=complex)
    zj[0] = center
    if order >= 1:
        zj[1] = 1.0
    with np.errstate(all="ignore"):
        c = _jet(f, zj)
    if not np.all(np.isfinite(c)):
        raise SingularEvaluation(f"non-finite jet at {center}")
    return Jet(center=complex(center), coeffs=c)


# --------------------------------------------------------------------------
# divided differences


def _is_grouped(nodes) -> bool:
    seen = set()
    prev = object()
    for x in nodes:
        if x != prev:
            if x in seen:
                return False
            seen.add(x)
            prev = x
    return True


def _grouped_table(nodes: list, jets: dict) -> np.ndarray:
    """Top row of the confluent table for nodes with coincident values adjacent."""
    x = np.array(nodes, dtype=complex)
    N = x.size
    cols = next(iter(jets.values())).shape[1]
    out = np.zeros((N, cols), dtype=complex)
    t = np.array([jets[v][0] for v in nodes])
    out[0] = t[0]
    for k in range(1, N):
        eq = x[k:] == x[:-k]
        dx = np.where(eq, 1.0, x[k:] - x[:-k])
        t = (t[1:] - t[:-1]) / dx[:, None]
        if np.any(eq):
            for i in np.nonzero(eq)[0]:
                t[i] = jets[nodes[i]][k]
        out[k] = t[0]
    return out


def hermite_table(nodes, jets) -> np.ndarray:
    """Prefix divided differences from per-node Taylor data.

    Parameters
    ----------
    nodes : sequence of complex
        Node multiset in the order defining the prefixes.
    jets : dict
        Maps each distinct node to an array of shape ``(mult, cols)`` whose
        row ``k`` holds the order-``k`` Taylor coefficient of each of ``cols``
        functions at that node (``mult`` at least the node multiplicity).

    Returns
    -------
    ndarray, shape (len(nodes), cols)
        Row ``k`` is the divided difference over the first ``k+1`` nodes.
    """
    nodes = [complex(v) for v in nodes]
    if not nodes:
        return np.zeros((0, 0), dtype=complex)
    if _is_grouped(nodes):
        return _grouped_table(nodes, jets)
    # regroup every prefix; divided differences are symmetric in their nodes
    cols = next(iter(jets.values())).shape[1]
    out = np.zeros((len(nodes), cols), dtype=complex)
    for k in range(len(nodes)):
        prefix = nodes[: k + 1]
        order = list(dict.fromkeys(prefix))
        grouped = [v for v in order for _ in range(prefix.count(v))]
        out[k] = _grouped_table(grouped, jets)[-1]
    return out


def node_multiplicities(nodes) -> dict:
    mult: dict = {}
    for v in nodes:
        v = complex(v)
        mult[v] = mult.get(v, 0) + 1
    return mult


def function_jets(f: FunctionSpec, nodes, max_order: int = MAX_JET_ORDER) -> dict:
    """Taylor data of ``f`` at each distinct node, as used by :func:`hermite_table`."""
    out = {}
    for v, k in node_multiplicities(nodes).items():
        if k - 1 > max_order:
            raise NodeOrderTooHigh(f"node {v} has multiplicity {k}, jet order cap is {max_order}")
        out[v] = jet(f, v, k - 1).coeffs[:, None]
    return out


def divided_differences(f: FunctionSpec, nodes, max_order: int = MAX_JET_ORDER) -> np.ndarray:
    """Hermite divided differences ``[a1], [a1,a2], ..., [a1..ak]`` of ``f``.

    Coincident nodes use jet coefficients: the divided difference over
    ``j+1`` copies of ``a`` is the order-``j`` Taylor coefficient at ``a``.
    Node order is preserved.
    """
    nodes = [complex(v) for v in nodes]
    if not nodes:
        return np.zeros(0, dtype=complex)
    return hermite_table(nodes, function_jets(f, nodes, max_order))[:, 0]


Expression = Union[FunctionSpec, str]


def as_function(f: Expression) -> FunctionSpec:
    return parse(f) if isinstance(f, str) else f
