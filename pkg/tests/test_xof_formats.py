import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcrypta import formats
from qcrypta.errors import FormatError
from qcrypta.xof import SeedExpander, derive_seed


def test_expander_is_deterministic_and_domain_separated():
    a = SeedExpander(bytes(32), "a").read(500)
    assert a == SeedExpander(bytes(32), "a").read(500)
    assert a != SeedExpander(bytes(32), "b").read(500)
    s = SeedExpander(bytes(32), "a")
    assert s.read(200) + s.read(300) == a


def test_derive_seed_separates_labels():
    assert derive_seed(b"m", "ab", "c") != derive_seed(b"m", "a", "bc")
    assert derive_seed(b"m", 1) != derive_seed(b"m", 2)
    assert len(derive_seed(b"m")) == 32


def test_below_is_in_range():
    s = SeedExpander(bytes(32))
    assert all(0 <= s.below(7) < 7 for _ in range(500))
    with pytest.raises(ValueError):
        SeedExpander(bytes(31))


@given(st.lists(st.integers(0, 8191), max_size=80))
def test_index_packing_roundtrip(idx):
    data = formats.pack_indices(idx, 13)
    assert len(data) == (13 * len(idx) + 7) // 8
    assert formats.unpack_indices(data, len(idx), 13) == idx


def test_headers():
    blob = formats.pack(formats.RQC_MAGIC, 2, b"xyz")
    assert formats.unpack(blob) == (formats.RQC_MAGIC, 2, b"xyz")
    with pytest.raises(FormatError):
        formats.unpack(blob, formats.HQC_MAGIC)
    with pytest.raises(FormatError):
        formats.unpack(b"HQCv1")
    with pytest.raises(FormatError):
        formats.unpack(b"NOPE\0\0\0\0\x00")
