import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hopfexp import constructions as C
from hopfexp.fields import make_field

Q = make_field("rational")
F3 = make_field("prime", 3)
F5 = make_field("prime", 5)
F7 = make_field("prime", 7)
C3 = make_field("cyclotomic", 3)


@functools.lru_cache(maxsize=None)
def algebra(name: str):
    """Corpus algebras by short name, built once per session."""
    table = {
        "QZ2": lambda: C.group_algebra(C.cyclic_group(2), Q),
        "QZ3": lambda: C.group_algebra(C.cyclic_group(3), Q),
        "QZ6": lambda: C.group_algebra(C.cyclic_group(6), Q),
        "QS3": lambda: C.group_algebra(C.symmetric_group(3), Q),
        "F7S3": lambda: C.group_algebra(C.symmetric_group(3), F7),
        "F5Z4": lambda: C.group_algebra(C.cyclic_group(4), F5),
        "dQZ2": lambda: C.dual_group_algebra(C.cyclic_group(2), Q),
        "dQS3": lambda: C.dual_group_algebra(C.symmetric_group(3), Q),
        "dF7S3": lambda: C.dual_group_algebra(C.symmetric_group(3), F7),
        "dQK4": lambda: C.dual_group_algebra(C.klein_four(), Q),
        "H4Q": lambda: C.taft(2, Q),
        "H4F3": lambda: C.taft(2, F3),
        "H4F5": lambda: C.taft(2, F5),
        "T3C3": lambda: C.taft(3, C3),
        "T3F7": lambda: C.taft(3, F7),
    }
    return table[name]()


@pytest.fixture
def alg():
    return algebra
