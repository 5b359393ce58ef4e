import pytest

import knotcol as kc
from knotcol import quandle as quandle_mod

TREFOIL_GAUSS = "O1+ U2+ O3+ U1+ O2+ U3+"
FIG8_GAUSS = "O1+ U2- O4- U1+ O3+ U4- O2- U3+"
FIG8_BRAID = "3: 1 -2 1 -2"


def _braid(text):
    return kc.parse_braid(text)


@pytest.fixture(scope="session")
def library():
    """Generated quandle library used across the suite (stable index order)."""
    return kc.library_generate(kc.LibrarySpec(
        dihedral_prime_max=7,
        affine_max=6,
        groups=[("s3", quandle_mod.symmetric_group_table(3)),
                ("s4", quandle_mod.symmetric_group_table(4))],
    ))


@pytest.fixture(scope="session")
def small_library(library):
    """Library quandles of size <= 6, for the exhaustive engine matrix."""
    return [q for q in library if q.size <= 6]


@pytest.fixture(scope="session")
def braids():
    """Braid presentations for knots that have one in the fixture set."""
    trefoil = kc.torus_braid(2, 3)
    fig8 = _braid(FIG8_BRAID)
    return {
        "unknot_stab": _braid("3: 1 2"),
        "trefoil_braid": trefoil,
        "trefoil_r2": kc.insert_r2(trefoil, 1, 1),
        "trefoil_stab": kc.markov_stabilize(trefoil),
        "fig8_braid": fig8,
        "fig8_r2": kc.insert_r2(fig8, 2, 0),
        "fig8_stab": kc.markov_stabilize(fig8),
        "t25": kc.torus_braid(2, 5),
        "t27": kc.torus_braid(2, 7),
        "t29": kc.torus_braid(2, 9),
        "t34": kc.torus_braid(3, 4),
    }


@pytest.fixture(scope="session")
def knots(braids):
    """Fixture diagrams (<= 8 crossings), incl. several unknot presentations."""
    diagrams = {
        "unknot0": kc.parse_gauss("UNKNOT"),
        "unknot_kink": kc.parse_gauss("O1+ U1+", name="unknot_kink"),
        "trefoil_gauss": kc.parse_gauss(TREFOIL_GAUSS, name="trefoil"),
        "fig8_gauss": kc.parse_gauss(FIG8_GAUSS, name="fig8"),
    }
    for name, braid in braids.items():
        diagrams[name] = kc.braid_to_diagram(braid, name=name)
    return diagrams


@pytest.fixture(scope="session")
def unknot_names():
    return ["unknot0", "unknot_kink", "unknot_stab"]
