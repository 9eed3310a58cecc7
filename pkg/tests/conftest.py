import pytest

from qcontract import catalog
from qcontract.parser import parse_expression


@pytest.fixture(scope="session")
def suq2():
    return catalog.suq2_presentation(1)


@pytest.fixture(scope="session")
def klmn():
    return catalog.ekappa2_klmn_presentation(1)


@pytest.fixture(scope="session")
def final():
    return catalog.ekappa2_final_presentation(1)


@pytest.fixture(scope="session")
def pe_suq2(suq2):
    def pe(text, order=1):
        return parse_expression(text, suq2.base.alphabet, ("q",), order)
    return pe


@pytest.fixture(scope="session")
def pe_klmn(klmn):
    def pe(text, order=1):
        return parse_expression(text, klmn.base.alphabet, ("lam",), order)
    return pe


@pytest.fixture(scope="session")
def pe_final(final):
    def pe(text, order=1):
        return parse_expression(text, final.base.alphabet, ("lam",), order)
    return pe
