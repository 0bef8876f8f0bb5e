import json

import numpy as np
import pandas as pd
import pytest

from src.errors import FormatError, InputDataError
from src.loaders import (
    BinaryLoader,
    TableLoader,
    decode_sckz,
    encode_sckz,
    metrics_json,
    select_loader,
    write_centers_csv,
    write_metrics_json,
    write_points_csv,
    write_sckz,
)


def write_text(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_csv_points(tmp_path):
    path = write_text(tmp_path, "pontos.csv", "1,2\n3,4\n5,6\n")
    loader = select_loader(path)
    assert isinstance(loader, TableLoader)
    X = loader.to_dataset(delta=8)
    assert X.points.tolist() == [[1, 2], [3, 4], [5, 6]]
    assert X.weights.tolist() == [1.0, 1.0, 1.0]
    assert X.delta == 8
    assert loader.get_metadata() == {"source_file": "pontos.csv", "loader": "TableLoader",
                                     "n": 3, "d": 2, "weighted": False}


def test_csv_header_is_skipped(tmp_path):
    path = write_text(tmp_path, "com_cabecalho.csv", "x,y\n7,8\n")
    assert select_loader(path).values().tolist() == [[7.0, 8.0]]


def test_csv_with_weights(tmp_path):
    path = write_text(tmp_path, "pesos.csv", "1,2,0.5\n3,4,2\n")
    X = select_loader(path, weighted=True).to_dataset()
    assert X.d == 2
    assert X.weights.tolist() == [0.5, 2.0]


def test_nonpositive_weight_is_rejected(tmp_path):
    path = write_text(tmp_path, "pesos.csv", "1,2,0\n")
    with pytest.raises(InputDataError):
        select_loader(path, weighted=True).to_dataset()


@pytest.mark.parametrize("content", ["1,2\n3,abc\n", "1.5,2\n", "1,2\n3\n"])
def test_malformed_tables(tmp_path, content):
    path = write_text(tmp_path, "ruim.csv", content)
    with pytest.raises(InputDataError):
        select_loader(path).get_data()


def test_empty_csv(tmp_path):
    path = write_text(tmp_path, "vazio.csv", "")
    loader = select_loader(path)
    assert loader.get_metadata()["n"] == 0
    assert loader.d == 0


def test_xlsx_points(tmp_path):
    path = str(tmp_path / "pontos.xlsx")
    pd.DataFrame([[1, 2], [3, 4]]).to_excel(path, header=False, index=False, engine="openpyxl")
    loader = select_loader(path)
    assert isinstance(loader, TableLoader)
    assert loader.values().tolist() == [[1.0, 2.0], [3.0, 4.0]]


def test_sckz_file(tmp_path):
    path = str(tmp_path / "pontos.bin")
    write_sckz(path, np.array([[1, 2, 3], [4, 5, 6]]))
    loader = select_loader(path)
    assert isinstance(loader, BinaryLoader)
    assert loader.values().tolist() == [[1, 2, 3], [4, 5, 6]]
    with pytest.raises(InputDataError):
        select_loader(path, weighted=True).get_data()


def test_sckz_payload_errors():
    payload = encode_sckz(np.array([[1, 2]]))
    assert decode_sckz(payload).tolist() == [[1.0, 2.0]]
    with pytest.raises(FormatError):
        decode_sckz(payload[:-1])
    with pytest.raises(FormatError):
        decode_sckz(b"ABCD" + payload[4:])
    with pytest.raises(InputDataError):
        encode_sckz(np.array([[1.5, 2.0]]))


def test_unknown_and_missing_inputs(tmp_path):
    path = tmp_path / "dados.bin"
    path.write_bytes(b"\x00\x01\x02\x03")
    with pytest.raises(InputDataError):
        select_loader(str(path))
    with pytest.raises(FileNotFoundError):
        select_loader(str(tmp_path / "nao_existe.csv"))


def test_signed_matrix_rows(tmp_path):
    path = write_text(tmp_path, "matriz.csv", "-3,4\n0,-1\n")
    A = select_loader(path).to_matrix(entry_bound=10)
    assert A.rows.tolist() == [[-3.0, 4.0], [0.0, -1.0]]
    with pytest.raises(InputDataError):
        select_loader(path).to_matrix(entry_bound=2)


def test_points_csv_reads_back(tmp_path):
    path = str(tmp_path / "saida" / "pontos.csv")
    write_points_csv(path, np.array([[1.0, 2.0], [3.0, 4.0]]))
    assert open(path).read() == "1,2\n3,4\n"
    assert select_loader(path).values().tolist() == [[1.0, 2.0], [3.0, 4.0]]


def test_centers_csv_has_header(tmp_path):
    path = str(tmp_path / "centros.csv")
    write_centers_csv(path, np.array([[1.5, 2.0]]))
    assert open(path).read().splitlines() == ["x0,x1", "1.5,2"]


def test_metrics_json_is_sorted_and_numpy_safe(tmp_path):
    text = metrics_json({"b": np.int64(2), "a": np.float64(0.5), "c": np.arange(2)})
    data = json.loads(text)
    assert list(data) == ["a", "b", "c", "schema_version"]
    assert data["c"] == [0, 1]
    path = str(tmp_path / "metricas.json")
    write_metrics_json(path, {"n": 3})
    assert json.load(open(path)) == {"n": 3, "schema_version": 1}
