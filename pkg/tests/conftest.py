import pathlib

import pytest

from limroot.roots import RealFormDescriptor as R

ROOT = pathlib.Path(__file__).resolve().parent.parent
CONFIGS = ROOT / "configs"

# noncompact forms with complex matrix size at most 8, every family represented
CATALOG = [
    R("SL", "R", (2,)), R("SL", "R", (3,)), R("SL", "R", (4,)), R("SL", "R", (5,)),
    R("SL", "C", (2,)), R("SL", "C", (3,)), R("SL", "H", (2,)), R("SL", "H", (3,)),
    R("GL", "R", (3,)),
    R("SU", "C", (1, 1)), R("SU", "C", (2, 1)), R("SU", "C", (2, 2)), R("SU", "C", (3, 1)),
    R("SU", "C", (3, 2)), R("U", "C", (2, 1)),
    R("SO_pq", None, (2, 1)), R("SO_pq", None, (2, 2)), R("SO_pq", None, (3, 2)),
    R("SO_pq", None, (3, 3)), R("SO_pq", None, (4, 1)), R("O_pq", None, (2, 1)),
    R("Sp_pq", None, (1, 1)), R("Sp_pq", None, (2, 1)), R("Sp_pq", None, (2, 2)),
    R("SpF", "R", (1,)), R("SpF", "R", (2,)), R("SpF", "R", (3,)), R("SpF", "C", (2,)),
    R("SOC", None, (3,)), R("SOC", None, (4,)), R("SOC", None, (5,)), R("OC", None, (3,)),
    R("SOstar", None, (2,)), R("SOstar", None, (3,)), R("SOstar", None, (4,)),
]


@pytest.fixture(scope="session")
def catalog():
    return CATALOG
