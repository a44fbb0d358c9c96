# Configuration LP optimum against scipy on the same enumerated configurations.
import itertools
import random

import pytest

import gmsched

scipy_opt = pytest.importorskip("scipy.optimize")


def load(norm, sizes):
    v = sorted(sizes, reverse=True)
    return sum(c * sum(v[:k]) for k, c in norm)


def configs(inst):
    size = {(i, j): p for i, j, p in inst["entries"]}
    norms = [[(t["k"], t["scale"]) for t in nm] for nm in inst["norms"]]
    for i in range(inst["machines"]):
        allowed = [j for j in range(inst["jobs"]) if (i, j) in size]
        for r in range(len(allowed) + 1):
            for c in itertools.combinations(allowed, r):
                yield i, c, load(norms[inst["machine_norm"][i]], [size[i, j] for j in c])


def feasible(inst, T):
    cols = [(i, c) for i, c, l in configs(inst) if l <= T * (1 + 1e-12)]
    a_ub, b_ub = [], []
    for j in range(inst["jobs"]):
        a_ub.append([-1.0 if j in c else 0.0 for _, c in cols])
        b_ub.append(-1.0)
    for i in range(inst["machines"]):
        a_ub.append([1.0 if k == i else 0.0 for k, _ in cols])
        b_ub.append(1.0)
    r = scipy_opt.linprog([0.0] * len(cols), A_ub=a_ub, b_ub=b_ub, bounds=(0, None), method="highs")
    return r.status == 0


def reference_threshold(inst):
    # feasibility only changes at configuration loads
    cands = sorted({l for _, c, l in configs(inst) if c})
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(inst, cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    return cands[lo]


@pytest.mark.parametrize("seed", range(20))
def test_lp_threshold_matches_scipy(seed):
    rng = random.Random(seed)
    m, n = rng.choice([2, 3]), rng.randint(4, 6)
    entries = [[i, j, round(rng.uniform(0.5, 2.0), 3)]
               for j in range(n) for i in range(m) if rng.random() < 0.85 or i == j % m]
    inst = {"schema": "gmsched/1", "kind": "instance", "machines": m, "jobs": n,
            "norms": [[{"k": n, "scale": 1.0}], [{"k": 1, "scale": 1.0}, {"k": 2, "scale": 0.5}]],
            "machine_norm": [rng.randint(0, 1) for _ in range(m)], "entries": entries}
    ours = gmsched.solve_lp(inst, 1e-9)["threshold"]
    assert ours == pytest.approx(reference_threshold(inst), rel=1e-9)
    assert ours <= gmsched.brute_opt(inst)["makespan"] * (1 + 1e-9)
