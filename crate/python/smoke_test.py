"""Smoke test for the covqsc extension module.

Build and install first:  pip install --no-build-isolation -e crates/python
"""

import cmath
import math

import covqsc


def close(a, b, tol):
    assert abs(a - b) <= tol, (a, b)


def lorentz():
    p = covqsc.FourVector.on_shell(1.0, [0.3, -0.2, 0.5])
    close(p.minkowski(p), 1.0, 1e-12)
    tag, mass_sq, little = p.classify()
    assert tag == "TimeLikeForward" and little == "So3Timelike", (tag, little)
    g = covqsc.LorentzTransform.boost([0.0, 0.0, 1.0], 0.4) @ covqsc.LorentzTransform.rotation([1.0, 0.0, 0.0], 0.7)
    assert g.metric_defect() < 1e-12
    close(covqsc.minkowski_inner(g.apply(p), g.apply(p)), 1.0, 1e-12)
    assert (g @ g.inverse()).spinor_deviation(covqsc.LorentzTransform.identity()) < 1e-12
    rest = covqsc.LorentzTransform.standard_boost(p, 1.0).inverse().apply(p).to_list()
    assert max(abs(x - y) for x, y in zip(rest, [1.0, 0.0, 0.0, 0.0])) < 1e-12
    assert covqsc.LorentzTransform.wigner_rotation(g, p, 1.0).metric_defect() < 1e-12


def imprimitivity():
    grid = covqsc.MomentumGrid.build(1.0, 1.0, 3)
    phi = covqsc.Section(grid, [[complex(k, 0.5), complex(0.2, -k)] for k in range(len(grid))])
    sys = covqsc.ImprimitivitySystem(1.0)
    g = covqsc.LorentzTransform.boost([1.0, 0.0, 0.0], 0.3)
    moved = sys.apply_u(g, phi)
    close(moved.norm(), phi.norm(), 1e-10 * phi.norm())
    back = sys.apply_u(g.inverse(), moved)
    assert back.distance(phi) < 1e-10
    region = covqsc.Region.ball(1.0, [0.1, 0.0, 0.0], 0.9)
    assert sys.imprimitivity_deviation(g, region, phi) < 1e-10
    again = covqsc.Section.from_json(phi.to_json())
    assert again.distance(phi) == 0.0


def fock():
    space = covqsc.FockSpace(1, 12)
    a = space.annihilation([1.0])
    a_dag = space.creation([1.0])
    ccr = a.then(a_dag).guarded_deviation(a_dag.then(a), 1)
    close(ccr, 1.0, 1e-12)
    z = complex(0.3, -0.2)
    w = space.weyl(covqsc.WeylDescriptor([z]))
    vac = w.apply(space.vacuum())
    close(abs(vac[0]), math.exp(-abs(z) ** 2 / 2), 1e-10)
    assert w.guarded_unitarity_defect(4) < 1e-8

    u = [[cmath.exp(0.4j)]]
    w1 = covqsc.WeylDescriptor([0.2], u)
    w2 = covqsc.WeylDescriptor([0.1j])
    lhs = space.weyl(w1) @ space.weyl(w2)
    rhs = space.weyl(w1.compose(w2)).scaled(w1.composition_phase(w2))
    assert lhs.guarded_deviation(rhs, 6) < 1e-8
    d1 = covqsc.WeylDescriptor([0.2])
    lhs = space.weyl(d1) @ space.weyl(w2)
    swapped = (space.weyl(w2) @ space.weyl(d1)).scaled(d1.commutator_phase(w2))
    assert lhs.guarded_deviation(swapped, 6) < 1e-8


def covariant():
    sys = covqsc.CovariantSystem()
    assert sys.generators() == ["Rz", "Rx"]
    v = sys.weyl("Rz Rx^-1")
    assert v.shape() == (sys.fock_dim(), sys.fock_dim())
    assert v.guarded_unitarity_defect(sys.guard()) < 1e-8
    assert sys.projective_law_deviation("Rz", "Rx Rz") < 1e-8
    assert sys.cocycle_identity_deviation("Rz Rz", "Rx") < 1e-10
    assert sys.vacuum_expectation_deviation("Rx") < 1e-10


if __name__ == "__main__":
    for test in (lorentz, imprimitivity, fock, covariant):
        test()
        print(f"ok {test.__name__}")
