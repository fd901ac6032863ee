import shutil

import pytest

from chevmod.tables import (
    DatasetError,
    load_paper_tables,
    minimal_support_check,
    parse_table_text,
    verify_all,
    verify_module,
    verify_record,
)
from chevmod.tables.dataset import DATA_DIR, IMAGES


def _dims(ds, group, node, piece):
    return [r.dim for r in ds.module(group, node, piece).records]


def test_record_count(dataset):
    assert len(dataset) > 300
    groups = {str(r.group) for r in dataset.records()}
    assert groups == {"D4", "D5", "E6", "E7", "E8", "F4", "G2"}


def test_known_rows(dataset):
    assert _dims(dataset, "E7", 7, 1) == [27, 26, 17, 0]
    assert [r.coadjoint_label for r in dataset.module("E7", 7, 1).records] == ["0000002", "0000010", "1000000", "0000000"]
    assert _dims(dataset, "E8", 1, 1) == [64, 63, 59, 54, 50, 44, 43, 35, 22, 0]
    assert len(dataset.module("D4", 2, 1).records) == 7


def test_g2_and_small_tables(dataset):
    g2 = [r for r in dataset.records() if str(r.group) == "G2"]
    assert len(g2) == 6
    assert [r.dim for r in dataset.module("G2", 2, 1).records] == [4, 3, 2, 0]
    assert len(dataset.module("E6", 4, 1).records) == 18


def test_images_present(dataset):
    for (group, node), (src, snode, _) in IMAGES.items():
        for key, table in dataset.modules.items():
            if str(key[0]) == src and key[1] == snode:
                img = dataset.module(group, node, key[2])
                assert [r.dim for r in img.records] == [r.dim for r in table.records]
                assert img.source.startswith("image of")


def test_image_rows_verify(dataset):
    report = verify_module("E6", 6, 1, dataset)
    assert report.passed
    assert all(r.status == "ok" for r in report.records)


def test_format_error_has_location():
    text = "module E7 node 7 piece 1 dim 27\norbit 0000001 dim 1 wdd 0000002\norbit banana\n"
    with pytest.raises(DatasetError, match=r"t.txt:3"):
        parse_table_text(text, "t.txt")


@pytest.mark.parametrize(
    "text,msg",
    [
        ("orbit 0000001 dim 1 wdd 0000002\n", "before any module"),
        ("module E7 node 9 piece 1 dim 27\n", "out of range"),
        ("module X7 node 1 piece 1 dim 27\n", "cannot parse"),
        ("module E7 node 7 piece 1 dim 27\norbit 0000001 dim 1 wdd 000002\n", "wrong length"),
        ("module E7 node 7 piece 1 dim 27\norbit 9999999 dim 1 wdd 0000002\n", ":2:"),
        ("module E7 node 7 piece 1 dim 27\norbit 0000001 dim 1 wdd 0000002 erratum foo=1\n", "erratum"),
    ],
)
def test_format_errors(text, msg):
    with pytest.raises(DatasetError, match=msg):
        parse_table_text(text, "bad.txt")


def test_comments_and_blank_lines():
    text = "# header\n\nmodule G2 node 2 piece 1 dim 4  # trailing\norbit 0 dim 0 wdd 00\n"
    (table,) = parse_table_text(text)
    assert table.dim == 4 and table.records[0].is_zero


def test_missing_path(tmp_path):
    with pytest.raises(DatasetError):
        load_paper_tables(tmp_path / "nope")


def test_duplicate_table(tmp_path):
    for name in ("a.txt", "b.txt"):
        (tmp_path / name).write_text("module G2 node 2 piece 1 dim 4\norbit 0 dim 0 wdd 00\n")
    with pytest.raises(DatasetError, match="duplicate"):
        load_paper_tables(tmp_path)


def test_fault_injection_gives_exactly_one_failure(tmp_path):
    shutil.copytree(DATA_DIR, tmp_path / "data")
    f = tmp_path / "data" / "g2_node2.txt"
    text = f.read_text()
    assert "orbit 31 dim 2 wdd 01" in text
    f.write_text(text.replace("orbit 31 dim 2 wdd 01", "orbit 31 dim 3 wdd 01"))
    ds = load_paper_tables(tmp_path / "data").restrict("G2")
    report = verify_all(ds)
    assert len(report.failures()) == 1
    assert "g2_node2.txt" in report.failures()[0]
    assert not report.ok


def test_unperturbed_g2_passes():
    report = verify_all(load_paper_tables().restrict("G2"))
    assert report.ok and report.n_records > 0


def test_verify_module_e7_node7(dataset):
    report = verify_module("E7", 7, 1, dataset)
    assert report.passed
    assert [(r.dim, r.wdd) for r in report.records] == [
        (27, "0000002"),
        (26, "0000010"),
        (17, "1000000"),
        (0, "0000000"),
    ]
    names = {c.name for c in report.checks}
    assert any("dense" in n for n in names)


def test_erratum_row(dataset):
    recs = [r for r in dataset.module("E7", 4, 2).records if r.erratum]
    assert len(recs) == 1
    check = verify_record(recs[0])
    assert check.status == "erratum"
    assert check.dim == recs[0].erratum["dim"] != recs[0].dim


def test_full_report(full_report):
    assert full_report.ok, full_report.failures()[:5]
    assert full_report.n_records == 552
    assert len(full_report.errata()) == 1
    assert all(c.passed for c in full_report.classical)
    assert any("2s+p" in n for n in full_report.notes)


def test_dense_and_zero_orbits(dataset):
    for table in dataset.modules.values():
        dims = [r.dim for r in table.records]
        assert max(dims) == table.dim
        assert sum(r.is_zero for r in table.records) == 1


def test_orbit_dim_at_most_nilpotent_dim(full_report):
    for m in full_report.modules:
        for r in m.records:
            assert r.dim <= r.nilpotent_dim


@pytest.mark.parametrize("group,minimal,others", [("E6", 22, {32}), ("E7", 34, {52, 54})])
def test_minimal_support(dataset, group, minimal, others):
    report = minimal_support_check(group, dataset, chain_lemma=False)
    assert report.passed
    top = report.steps[0]
    assert top.minimal_dim == minimal
    assert {o[3] for o in top.orbits if o[0] != "0" and not o[4]} == others
    assert [str(s.kind) for s in report.steps][:3] == [group, "E6" if group == "E7" else "D5", "D5" if group == "E7" else "A4"]
