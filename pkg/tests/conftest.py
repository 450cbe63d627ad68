import pytest

from setshaping.seqcore import Sequence


def seq(text: str, ns: int) -> Sequence:
    return Sequence.parse(text, ns)


@pytest.fixture
def S():
    return seq
