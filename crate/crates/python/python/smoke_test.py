"""Smoke test for the varorder Python extension.

Build and install the module first, e.g. `maturin develop` from crates/python,
then run `python python/smoke_test.py`.
"""

import math

import varorder


def close(x, y, tol=1e-10):
    return abs(x - y) <= tol


def main():
    a = varorder.Observable.diagonal([0.0, 1.0, 2.0])
    b = varorder.Observable.diagonal([0.0, 1.0, 3.0])

    v = varorder.decide_order(a, b)
    assert v.holds and bool(v)
    assert v.certificate == [(0.0, 0.0), (1.0, 1.0), (3.0, 2.0)]
    assert varorder.precedes(a, b)

    c = varorder.Observable.diagonal([0.0, 2.0, 3.0])
    v = varorder.decide_order(c, b)
    assert not v.holds
    assert close(v.margin, 0.75)
    w = v.witness
    assert close(varorder.variance(c, vector=w) - varorder.variance(b, vector=w), v.margin)

    gap, _ = varorder.witness_search(a, b, restarts=4)
    assert gap <= 1e-6

    x = varorder.Observable([[0, 1], [1, 0]])
    z = varorder.Observable([[1, 0], [0, -1]])
    y = varorder.Observable([[0, -1j], [1j, 0]])
    assert all(close(s, t) for s, t in zip(y.spectrum(), [-1.0, 1.0]))
    assert not varorder.decide_order(x, z).holds
    try:
        varorder.joint_upper_bound(x, z)
    except varorder.VarorderError:
        pass
    else:
        raise AssertionError("non-commuting pair accepted")

    plus = [1 / math.sqrt(2), 1 / math.sqrt(2)]
    assert close(varorder.variance(z, vector=plus), 1.0)
    assert close(varorder.variance(z, density=[[0.5, 0], [0, 0.5]]), 1.0)

    q = varorder.q_matrix([0.0, 1.0, 3.0, 7.0])
    assert [q[0][1], q[0][2], q[1][2], q[2][3], q[1][3], q[0][3]] == [1.0, 3.0, 2.0, 4.0, 6.0, 6.0]
    d = varorder.reconstruct_metric(q)
    assert d[0][3] == 7.0

    canon = varorder.canonical_representative(varorder.Observable.diagonal([1.0, 2.0, 4.0]))
    assert [canon.matrix()[i][i].real for i in range(3)] == [0.0, 1.0, 3.0]
    assert close(varorder.max_deviation(b), 1.5)
    assert [t for _, t in varorder.two_point_lower_set(b)] == [1.0, 1.0, 2.0]
    assert varorder.verify_automorphism(2.0, [[1, 0], [0, 1]], trials=20)

    try:
        varorder.Observable([[0, 1], [0, 0]])
    except varorder.VarorderError:
        pass
    else:
        raise AssertionError("non-Hermitian matrix accepted")

    print(f"varorder {varorder.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
