import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given

from kminkowski.scalars import BACKEND, IL, LAM, ONE, ZERO, GaussianRational, Scalar, format_scalar

from conftest import gaussians, scalars


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a
    assert a - a == ZERO


@given(scalars, scalars)
def test_conj_is_involutive_ring_map(a, b):
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()


@given(gaussians)
def test_gaussian_inverse(z):
    if z:
        assert z * z.inverse() == GaussianRational(1)


def test_lambda_is_real_and_il_is_imaginary():
    assert LAM.conj() == LAM
    assert IL.conj() == -IL
    assert IL * IL == -(LAM * LAM)


def test_zero_terms_are_dropped():
    s = Scalar({1: GaussianRational(2)}) - Scalar({1: GaussianRational(2)})
    assert not s and s.terms == {}


@pytest.mark.parametrize("s, text", [
    (IL, "i*k^-1"),
    (-IL, "-i*k^-1"),
    (Scalar({-1: GaussianRational(1)}), "k"),
    (Scalar({2: GaussianRational(Fraction(-1, 2))}), "-1/2*k^-2"),
    (Scalar({0: GaussianRational(1, 3)}), "(1 + 3*i)"),
    (Scalar({0: GaussianRational(0, -1), 1: GaussianRational(2)}), "-i + 2*k^-1"),
    (ZERO, "0"),
])
def test_formatting(s, text):
    assert format_scalar(s) == text


def test_backend_is_reported():
    assert BACKEND in ("gmpy2", "fractions")


def test_pure_backend_matches():
    # the fallback must produce the same printed results as the accelerated one
    code = "from kminkowski.cli import main; main(['d', '--n', '2', 'x0*x1*x0 + 1/3*i*x1'])"
    outs = {}
    for pure in ("", "1"):
        env = dict(os.environ, KMINKOWSKI_PURE=pure)
        if not pure:
            env.pop("KMINKOWSKI_PURE")
        outs[pure] = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                                    text=True, check=True).stdout
    assert outs[""] == outs["1"]
    probe = subprocess.run([sys.executable, "-c", "import kminkowski; print(kminkowski.BACKEND)"],
                           env=dict(os.environ, KMINKOWSKI_PURE="1"), capture_output=True, text=True)
    assert probe.stdout.strip() == "fractions"
