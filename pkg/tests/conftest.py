from __future__ import annotations

from functools import lru_cache

import pytest

from mhc_ore import Character, Derivation, Extension, FunctionAlgebra, OreData
from mhc_ore import kernel as K
from mhc_ore.kernel import Const, PowerRule
from mhc_ore.loop import cyclic_loop, moufang_double, permutation_group, validate_loop
from mhc_ore.scalar import ONE

NON_IP_TABLE = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]


@lru_cache(maxsize=None)
def loop(name: str):
    if name == "C2":
        return cyclic_loop(2)
    if name == "C3":
        return cyclic_loop(3)
    if name == "S3":
        return permutation_group()
    if name == "M12":
        return moufang_double(permutation_group())
    if name == "nonIP":
        return validate_loop(list("eabcd"), NON_IP_TABLE)
    raise KeyError(name)


@lru_cache(maxsize=None)
def algebra(name: str, rank: int = 1) -> FunctionAlgebra:
    return FunctionAlgebra(loop(name), rank)


def ore_data(name="C2", p0=-2, lam="2", delta=None, elem="e") -> OreData:
    A = algebra(name)
    return OreData(A, Character.at(A.point(p0, elem)), PowerRule([lam]), delta)


def shift_multiplier(c=3, lam="2"):
    """c (r - 1) for r = lam^p: a skew-primitive multiplier."""
    return K.scale(c, K.add(PowerRule([lam]), Const(1, -ONE)))


def twisted(c=3, lam="2") -> Derivation:
    return Derivation.twisted(shift_multiplier(c, lam))


@pytest.fixture(scope="session")
def base_data() -> OreData:
    return ore_data()


@pytest.fixture(scope="session")
def base_ext(base_data) -> Extension:
    return Extension(base_data)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict = {}


def record(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
