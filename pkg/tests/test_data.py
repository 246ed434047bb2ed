import numpy as np
import pytest

from core.data import (
    ColumnKind, ColumnSchema, RawTable, ScalerMode, SplitSpec, apply_scaler, attach_image_features, fit_scaler,
    fit_vocabulary, format_cell, load_case_file, load_csv, load_schema, one_hot, prepare_table_cases, split,
    split_indices, to_case_records, write_case_file, write_csv_rows,
)
from core.env import CaseRecord
from core.errors import ConfigurationError, DataError, SchemaError

SCHEMA = [
    ColumnSchema("case_id", ColumnKind.IDENTIFIER),
    ColumnSchema("age", ColumnKind.NUMERIC),
    ColumnSchema("state", ColumnKind.CATEGORICAL),
    ColumnSchema("culprit", ColumnKind.LABEL),
]


def table_of(ages, states=None, labels=None):
    states = states or ["ca"] * len(ages)
    labels = labels or ["0"] * len(ages)
    rows = [[f"r{i}", a, s, lab] for i, (a, s, lab) in enumerate(zip(ages, states, labels))]
    return RawTable.from_rows(SCHEMA, rows)


def numeric_table(n):
    schema = [ColumnSchema("x", "numeric"), ColumnSchema("label", "label")]
    return RawTable.from_rows(schema, [[float(i), str(i % 2)] for i in range(n)])


class TestSchema:
    def test_sidecar_keeps_file_order(self, tmp_path):
        path = tmp_path / "schema.yaml"
        path.write_text("case_id: IDENTIFIER\nage: numeric\nstate: CATEGORICAL\nculprit: LABEL\n", encoding="utf-8")
        schema = load_schema(path)
        assert [c.name for c in schema] == ["case_id", "age", "state", "culprit"]
        assert schema[1].kind is ColumnKind.NUMERIC

    def test_unknown_kind(self, tmp_path):
        path = tmp_path / "schema.yaml"
        path.write_text("age: INTEGER\n", encoding="utf-8")
        with pytest.raises(SchemaError):
            load_schema(path)

    def test_missing_sidecar(self, tmp_path):
        with pytest.raises(DataError):
            load_schema(tmp_path / "absent.yaml")

    def test_duplicate_columns(self):
        with pytest.raises(SchemaError):
            RawTable.from_rows([ColumnSchema("a", "NUMERIC"), ColumnSchema("a", "LABEL")], [])


class TestLoadCsv:
    def test_typed_columns(self, tmp_path):
        path = tmp_path / "cases.csv"
        path.write_text("case_id,age,state,culprit\nc1,34,ca,1\nc2, 51.5 ,ny,0\n", encoding="utf-8")
        table = load_csv(path, SCHEMA)
        assert len(table) == 2
        assert table.column("age").tolist() == [34.0, 51.5]
        assert table.column("state").tolist() == ["ca", "ny"]
        assert table.dropped_rows == 0

    def test_malformed_numeric_rows_are_dropped(self, tmp_path, caplog):
        path = tmp_path / "cases.csv"
        path.write_text("case_id,age,state,culprit\nc1,abc,ca,1\nc2,40,ny,0\nc3,inf,ny,0\n", encoding="utf-8")
        table = load_csv(path, SCHEMA)
        assert table.column("case_id").tolist() == ["c2"]
        assert table.dropped_rows == 2
        assert "Dropped 2" in caplog.text

    def test_header_mismatch(self, tmp_path):
        path = tmp_path / "cases.csv"
        path.write_text("case_id,state,age,culprit\nc1,ca,3,1\n", encoding="utf-8")
        with pytest.raises(SchemaError):
            load_csv(path, SCHEMA)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "cases.csv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(SchemaError):
            load_csv(path, SCHEMA)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError) as info:
            load_csv(tmp_path / "absent.csv", SCHEMA)
        assert "absent.csv" in str(info.value)

    def test_header_only(self, tmp_path):
        path = tmp_path / "cases.csv"
        path.write_text("case_id,age,state,culprit\n", encoding="utf-8")
        assert len(load_csv(path, SCHEMA)) == 0


class TestWriteCsvRows:
    def test_cells_are_formatted_for_exact_read_back(self, tmp_path):
        path = write_csv_rows(tmp_path / "nested" / "out.csv", ["name", "value", "count"],
                              [("a", 0.1, 3), ("b", None, 4), ("c", float("nan"), np.int64(5)),
                               ("d", np.float32(0.5), 0)])
        assert path.read_bytes() == b"name,value,count\na,0.1,3\nb,,4\nc,,5\nd,0.5,0\n"

    def test_header_only_when_there_are_no_rows(self, tmp_path):
        path = write_csv_rows(tmp_path / "empty.csv", ["episode", "accuracy"], [])
        assert path.read_text(encoding="utf-8") == "episode,accuracy\n"

    def test_floats_keep_every_digit(self, tmp_path):
        value = 1 / 3
        path = write_csv_rows(tmp_path / "third.csv", ["x"], [(value,)])
        assert float(path.read_text(encoding="utf-8").splitlines()[1]) == value

    def test_text_with_commas_is_quoted(self, tmp_path):
        path = write_csv_rows(tmp_path / "quoted.csv", ["name"], [("north, east",)])
        assert path.read_text(encoding="utf-8").splitlines()[1] == '"north, east"'

    def test_format_cell(self):
        assert [format_cell(v) for v in (None, float("nan"), 2.5, 7, "x")] == ["", "", "2.5", "7", "x"]


class TestScaler:
    def test_minmax(self):
        table = table_of([0.0, 5.0, 10.0])
        scaled = apply_scaler(table, fit_scaler(table, ScalerMode.MINMAX))
        assert scaled.column("age").tolist() == [0.0, 0.5, 1.0]

    def test_standard_uses_population_std(self):
        table = table_of([1.0, 2.0, 3.0])
        scaled = apply_scaler(table, fit_scaler(table, "standard"))
        expected = np.array([-1.0, 0.0, 1.0]) / np.sqrt(2.0 / 3.0)
        assert np.allclose(scaled.column("age").astype(float), expected, rtol=0, atol=1e-12)

    def test_constant_column_maps_to_zero(self):
        table = table_of([4.0, 4.0])
        for mode in ScalerMode:
            scaled = apply_scaler(table, fit_scaler(table, mode))
            assert scaled.column("age").tolist() == [0.0, 0.0]

    def test_values_outside_training_range_are_not_clipped(self):
        stats = fit_scaler(table_of([0.0, 10.0]))
        assert apply_scaler(table_of([20.0, -5.0]), stats).column("age").tolist() == [2.0, -0.5]

    def test_scaling_twice_with_refit_is_stable(self):
        table = table_of([0.0, 5.0, 10.0])
        once = apply_scaler(table, fit_scaler(table))
        twice = apply_scaler(once, fit_scaler(once))
        assert twice.column("age").tolist() == once.column("age").tolist()

    def test_input_table_is_untouched(self):
        table = table_of([0.0, 10.0])
        apply_scaler(table, fit_scaler(table))
        assert table.column("age").tolist() == [0.0, 10.0]

    def test_empty_table(self):
        with pytest.raises(DataError):
            fit_scaler(table_of([]))

    def test_unknown_mode(self):
        with pytest.raises(ConfigurationError):
            fit_scaler(table_of([1.0]), "robust")


class TestOneHot:
    def test_columns_replace_the_categorical_in_place(self):
        encoded = one_hot(table_of([1.0, 2.0, 3.0], states=["ca", "ny", "ca"]))
        assert encoded.columns == ["case_id", "age", "state=ca", "state=ny", "culprit"]
        assert encoded.kind("state=ca") is ColumnKind.NUMERIC
        assert encoded.column("state=ca").tolist() == [1.0, 0.0, 1.0]
        assert encoded.column("state=ny").tolist() == [0.0, 1.0, 0.0]

    def test_unseen_category_encodes_as_zeros(self):
        vocabulary = fit_vocabulary(table_of([1.0, 2.0], states=["ca", "ny"]))
        encoded = one_hot(table_of([5.0], states=["tx"]), vocabulary)
        assert encoded.column("state=ca").tolist() == [0.0]
        assert encoded.column("state=ny").tolist() == [0.0]

    def test_each_row_has_at_most_one_indicator(self):
        encoded = one_hot(table_of([1.0] * 5, states=["a", "b", "c", "a", "b"]))
        indicators = np.stack([encoded.column(f"state={s}") for s in "abc"], axis=1)
        assert indicators.sum(axis=1).tolist() == [1.0] * 5


class TestSplit:
    def test_sizes_for_one_hundred_rows(self):
        train, validation, test = split_indices(100, SplitSpec(0.2, 0.2, seed=3))
        assert (len(train), len(validation), len(test)) == (60, 20, 20)

    def test_partitions_cover_every_row_once(self):
        parts = split_indices(37, SplitSpec(0.25, 0.1, seed=8))
        merged = np.concatenate(parts)
        assert sorted(merged.tolist()) == list(range(37))

    def test_same_seed_same_split(self):
        a = split_indices(50, SplitSpec(seed=4))
        b = split_indices(50, SplitSpec(seed=4))
        assert all(np.array_equal(x, y) for x, y in zip(a, b))

    def test_fractions_must_leave_training_rows(self):
        with pytest.raises(ConfigurationError):
            SplitSpec(0.5, 0.5)

    def test_split_tables_keep_schema(self):
        train, validation, test = split(numeric_table(10), SplitSpec(0.2, 0.2, seed=1))
        assert (len(train), len(validation), len(test)) == (6, 2, 2)
        assert train.columns == ["x", "label"]


class TestCaseRecords:
    def test_records_from_an_encoded_table(self):
        table = one_hot(table_of([1.0, 2.0], states=["ca", "ny"], labels=["1", "0"]))
        records = to_case_records(table, "culprit", n_suspects=2)
        assert [r.case_id for r in records] == ["r0", "r1"]
        assert records[0].state.tolist() == [1.0, 1.0, 0.0]
        assert [r.culprit_index for r in records] == [1, 0]

    def test_unencoded_categoricals_are_rejected(self):
        with pytest.raises(SchemaError):
            to_case_records(table_of([1.0]), "culprit", n_suspects=2)

    @pytest.mark.parametrize("label", ["2", "-1", "1.5", "bob"])
    def test_bad_labels(self, label):
        table = one_hot(table_of([1.0], labels=[label]))
        with pytest.raises(DataError):
            to_case_records(table, "culprit", n_suspects=2)

    def test_row_label_is_the_id_without_identifier_column(self):
        records = to_case_records(numeric_table(3), "label", n_suspects=2)
        assert [r.case_id for r in records] == ["0", "1", "2"]

    def test_missing_label_column(self):
        with pytest.raises(SchemaError):
            to_case_records(numeric_table(3), "culprit", n_suspects=2)


class TestPrepareTableCases:
    def test_statistics_come_from_training_rows_only(self):
        table = numeric_table(20)
        spec = SplitSpec(0.2, 0.2, seed=5)
        prepared = prepare_table_cases(table, "label", 2, spec)
        train, _, _ = split(table, spec)
        assert prepared.scaler == fit_scaler(train)
        assert (len(prepared.train), len(prepared.validation), len(prepared.test)) == (12, 4, 4)

    def test_perturbing_held_out_rows_changes_no_statistics(self):
        spec = SplitSpec(0.2, 0.2, seed=5)
        schema = [ColumnSchema("x", "numeric"), ColumnSchema("kind", "categorical"), ColumnSchema("label", "label")]
        rows = [[float(i), "ab"[i % 2], str(i % 2)] for i in range(20)]
        train_idx, validation_idx, test_idx = split_indices(20, spec)
        perturbed = [list(r) for r in rows]
        for i in np.concatenate([validation_idx, test_idx]):
            perturbed[i][0] = 1e6
            perturbed[i][1] = "zz"
        a = prepare_table_cases(RawTable.from_rows(schema, rows), "label", 2, spec)
        b = prepare_table_cases(RawTable.from_rows(schema, perturbed), "label", 2, spec)
        assert a.scaler == b.scaler
        assert a.vocabulary == b.vocabulary
        assert [r.state.tolist() for r in a.train] == [r.state.tolist() for r in b.train]

    def test_training_features_span_unit_interval(self):
        prepared = prepare_table_cases(numeric_table(20), "label", 2, SplitSpec(0.2, 0.2, seed=5))
        values = [r.state[0] for r in prepared.train]
        assert min(values) == 0.0 and max(values) == 1.0


class TestCaseFiles:
    def test_round_trip_is_bit_exact(self, tmp_path, synthetic_cases):
        write_case_file(synthetic_cases, tmp_path / "cases.csv")
        restored = load_case_file(tmp_path / "cases.csv")
        assert [r.case_id for r in restored] == [r.case_id for r in synthetic_cases]
        for a, b in zip(restored, synthetic_cases):
            assert np.array_equal(a.state, b.state)
            assert (a.culprit_index, a.n_suspects) == (b.culprit_index, b.n_suspects)

    def test_header_is_checked(self, tmp_path):
        path = tmp_path / "cases.csv"
        path.write_text("id,culprit_index,n_suspects,f0\na,0,2,1.0\n", encoding="utf-8")
        with pytest.raises(SchemaError):
            load_case_file(path)

    def test_culprit_out_of_range(self, tmp_path):
        path = tmp_path / "cases.csv"
        path.write_text("case_id,culprit_index,n_suspects,f0\na,5,2,1.0\n", encoding="utf-8")
        with pytest.raises(DataError):
            load_case_file(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            load_case_file(tmp_path / "absent.csv")


class TestImageFeatures:
    def test_descriptors_are_appended(self, tmp_path):
        path = tmp_path / "features.csv"
        path.write_text("image_id,descriptor_kind,v0,v1\na,LBP,0.25,0.75\nb,LBP,1.0,0.0\n", encoding="utf-8")
        records = [CaseRecord("a", [1.0, 2.0], 2, 0), CaseRecord("b", [3.0, 4.0], 2, 1)]
        fused = attach_image_features(records, path)
        assert fused[0].state.tolist() == [1.0, 2.0, 0.25, 0.75]
        assert fused[1].state.tolist() == [3.0, 4.0, 1.0, 0.0]
        assert fused[1].culprit_index == 1

    def test_case_without_descriptor(self, tmp_path):
        path = tmp_path / "features.csv"
        path.write_text("image_id,descriptor_kind,v0\na,HOG,1.0\n", encoding="utf-8")
        with pytest.raises(DataError):
            attach_image_features([CaseRecord("z", [1.0], 2, 0)], path)
