"""
Registry of test functions used by the rate experiments.

Ids are stable strings:

    exp                 e^x
    runge               1 / (1 + 25 x^2)
    endpoint:G          (1 - x)^G
    interior:G:X0       |x - X0|^G
    jacobi:N:A:B        J_N^{A,B}
    sharp:N:A:B:K       J_{N+1}^{A-K,B-K} (extended parameters)
"""

from dataclasses import dataclass

import numpy as np

from src.exceptions import UnknownId
from src.jacobi.poly import Params
from src.jacobi.quadrature import Evaluator, Fn
from src.jacobi.special import jacobi_J_extended, jacobi_J_poly, pochhammer

RUNGE_POLE = 0.2j


@dataclass(frozen=True)
class TestFn:
    """
    A registered test function.

    Attributes:
        id: Registry id.
        fn: Evaluator with derivatives.
        smoothness: Free-text description of the regularity.
    """

    __test__ = False

    id: str
    fn: Fn
    smoothness: str


def _exp() -> TestFn:
    return TestFn("exp", Fn(np.exp, derivative_factory=lambda k: np.exp, label="exp"), "entire")


def _runge() -> TestFn:
    # 1/(1+25x^2) = Im(1/(x - i/5)) / 5
    def derivative(k: int) -> Evaluator:
        factor = (-1.0) ** k * float(np.prod(np.arange(1, k + 1)))

        def ev(x: np.ndarray) -> np.ndarray:
            z = np.asarray(x, dtype=float) - RUNGE_POLE
            return np.imag(factor / z ** (k + 1)) / 5.0

        return ev

    fn = Fn(derivative(0), derivative_factory=derivative, label="runge")
    return TestFn("runge", fn, "analytic, poles at +-0.2i")


def _power_derivative(gamma: float, k: int) -> float:
    """gamma (gamma-1) ... (gamma-k+1)."""
    return pochhammer(gamma - k + 1.0, k)


def _endpoint(gamma: float, fid: str) -> TestFn:
    def derivative(k: int) -> Evaluator:
        coef = (-1.0) ** k * _power_derivative(gamma, k)

        def ev(x: np.ndarray) -> np.ndarray:
            with np.errstate(divide="ignore"):
                return coef * (1.0 - np.asarray(x, dtype=float)) ** (gamma - k)

        return ev

    fn = Fn(derivative(0), derivative_factory=derivative, label=fid)
    return TestFn(fid, fn, f"W^r for r < {gamma + 0.5:g} in L^2, singular at x = 1")


def _interior(gamma: float, x0: float, fid: str) -> TestFn:
    def derivative(k: int) -> Evaluator:
        coef = _power_derivative(gamma, k)

        def ev(x: np.ndarray) -> np.ndarray:
            d = np.asarray(x, dtype=float) - x0
            with np.errstate(divide="ignore", invalid="ignore"):
                return coef * np.abs(d) ** (gamma - k) * np.sign(d) ** k

        return ev

    fn = Fn(derivative(0), derivative_factory=derivative, label=fid)
    return TestFn(fid, fn, f"singular at x = {x0:g}")


def _jacobi(n: int, p: Params, fid: str) -> TestFn:
    q = jacobi_J_poly(n, p) if p.is_weighted else jacobi_J_extended(n, p)
    return TestFn(fid, Fn.from_poly(q, label=fid), f"polynomial of degree {n}")


def _parse_numbers(fid: str, parts: list[str], count: int) -> list[float]:
    if len(parts) != count:
        raise UnknownId("Wrong number of fields in test-function id", id=fid, expected=count)
    try:
        return [float(v) for v in parts]
    except ValueError as exc:
        raise UnknownId("Malformed number in test-function id", id=fid) from exc


def _as_int(fid: str, value: float) -> int:
    if value != int(value) or value < 0:
        raise UnknownId("Degree fields must be non-negative integers", id=fid)
    return int(value)


def registry(fid: str) -> TestFn:
    """
    Resolve a test-function id.

    Raises:
        UnknownId: If the id is unknown or malformed.

    Example:
        >>> round(float(registry("endpoint:1.75").fn(np.array(-1.0))), 12)
        3.363585661015
    """
    head, *rest = fid.strip().split(":")
    if head == "exp" and not rest:
        return _exp()
    if head == "runge" and not rest:
        return _runge()
    if head == "endpoint":
        (gamma,) = _parse_numbers(fid, rest, 1)
        return _endpoint(gamma, fid)
    if head == "interior":
        gamma, x0 = _parse_numbers(fid, rest, 2)
        return _interior(gamma, x0, fid)
    if head == "jacobi":
        n, a, b = _parse_numbers(fid, rest, 3)
        return _jacobi(_as_int(fid, n), Params(a, b), fid)
    if head == "sharp":
        n, a, b, k = _parse_numbers(fid, rest, 4)
        shift = -_as_int(fid, k)
        q = jacobi_J_extended(_as_int(fid, n) + 1, Params(a, b).shifted(shift))
        return TestFn(fid, Fn.from_poly(q, label=fid), "extended Jacobi polynomial")
    raise UnknownId("Unknown test-function id", id=fid)
