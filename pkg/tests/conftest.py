from __future__ import annotations

import pytest

from termstrat import Theory, load_theory

REX_TEXT = """\
sig a/0 b/0 f/1 g/1 h/2
sig 0/0 s/1 plus/2
rule r1 : a => b
rule r2 : g(x) => x
rule r3 : f(x) => g(x)
rule p0 : plus(0,y) => y
rule ps : plus(s(x),y) => s(plus(x,y))
"""

CHAIN_TEXT = """\
sig a/0 b/0 c/0 d/0
rule c1 : a => b
rule c2 : b => c
rule c3 : c => d
"""


@pytest.fixture(scope="session")
def rex() -> Theory:
    return load_theory(REX_TEXT)


@pytest.fixture(scope="session")
def chain() -> Theory:
    return load_theory(CHAIN_TEXT)
