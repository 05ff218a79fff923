import pytest

from hpq.persistence import VersionStore


def test_versioned_reads():
    st = VersionStore()
    c = st.new_cell(initial=0)
    assert st.read(c) == 0
    v1 = st.new_version()
    st.write(c, 10)
    v2 = st.new_version()
    st.write(c, 20)
    assert st.read(c) == 20
    assert st.read(c, v1) == 10
    assert st.read(c, v2) == 20
    assert st.read(c, 0) == 0  # before any write
    assert c.history_len() == 2


def test_same_version_writes_collapse():
    st = VersionStore()
    c = st.new_cell()
    st.new_version()
    st.write(c, 1)
    st.write(c, 2)
    assert c.history_len() == 1
    assert st.read(c) == 2
    assert st.writes == 2  # the counter still counts both calls


def test_write_requires_open_version():
    st = VersionStore()
    c = st.new_cell()
    with pytest.raises(RuntimeError):
        st.write(c, 1)


def test_reads_leave_counters_alone():
    st = VersionStore()
    cells = [st.new_cell(i) for i in range(8)]
    for v in range(5):
        st.new_version()
        st.write(cells[v % 8], v)
    w0 = st.writes
    for c in cells:
        for ver in range(st.current + 1):
            st.read(c, ver)
    assert st.writes == w0
    assert st.cells == 8
    assert st.history_total() == w0
