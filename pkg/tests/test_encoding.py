import math

import numpy as np
import pytest

from src.config import DEFAULT_N_BOUND, I16_EXPONENT_CAP
from src.encoding import (
    decode,
    deserialize,
    encode,
    encode_against_global,
    eps_prime_schedule,
    measure_bits,
    offset_magnitude_bound,
    record_dtype,
    serialize,
)
from src.errors import ContractError, FormatError
from src.geometry import CenterSet, Dataset
from src.utils.rounding import exponent_limit

ANCHORS = np.array([[200.0, 200.0], [800.0, 300.0], [500.0, 900.0]])


def test_eps_prime_schedule():
    value = eps_prime_schedule(0.5, 2, 2, 2, 1000, 1024)
    assert value == pytest.approx(0.25 / (100 * 2 * (2 + math.log2(1000 * 1024))))
    # z > 2 usa eps^z
    assert eps_prime_schedule(0.5, 3, 1, 1, 2, 1, constant=1.0) == pytest.approx(0.125 / 2)


def test_record_layout_is_packed():
    assert record_dtype(2).itemsize == 4 + 2 * 3 + 4


def test_decode_is_within_relative_tolerance(planted):
    eps_prime = 0.01
    E = encode(planted, ANCHORS, eps_prime)
    decoded = decode(E)
    offsets = planted.points - ANCHORS[E.anchor_ids]
    slack = math.sqrt(1 + eps_prime) - 1
    assert np.all(np.abs(decoded.points - planted.points) <= slack * np.abs(offsets) + 1e-9)
    assert np.allclose(decoded.weights, planted.weights, rtol=slack)
    assert len(decoded) == len(planted)


def test_anchor_coordinates_decode_exactly():
    X = Dataset.from_points([[200, 200], [200, 250]])
    decoded = decode(encode(X, ANCHORS, 0.05))
    assert decoded.points[0].tolist() == [200.0, 200.0]
    assert decoded.points[1, 0] == 200.0


def test_anchors_are_snapped_to_integers():
    E = encode(Dataset.from_points([[3, 3]]), CenterSet([[1.4, 2.6]]), 0.1)
    assert E.anchors.tolist() == [[1.0, 3.0]]


def test_serialized_payload_reads_back(planted):
    E = encode(planted, ANCHORS, 0.02)
    payload = serialize(E)
    back = deserialize(payload)
    assert back.records_equal(E)
    assert np.array_equal(back.anchors, E.anchors)
    assert back.eps_prime == E.eps_prime
    assert measure_bits(E).serialized_bytes == len(payload)


def test_measure_bits_formula(planted):
    E = encode(planted, ANCHORS, 0.02)
    report = measure_bits(E)
    exp_bits = math.ceil(math.log2(2 * E.exponent_limit + 1))
    weight_bits = math.ceil(math.log2(2 * E.weight_limit + 1))
    assert report.record_bits == 2 + 2 * (2 + exp_bits) + weight_bits
    assert report.anchor_bits == 64 * 3 * 2
    assert report.total_bits == report.header_bits + report.anchor_bits + len(planted) * report.record_bits


def test_empty_coreset_without_anchors():
    E = encode(Dataset.empty(2), np.zeros((0, 2)), 0.1)
    payload = serialize(E)
    back = deserialize(payload)
    assert back.k == 0 and len(back) == 0
    assert len(decode(back)) == 0


def test_encode_contracts(planted):
    with pytest.raises(ContractError):
        encode(planted, np.zeros((0, 2)), 0.1)
    with pytest.raises(ContractError):
        encode(planted, ANCHORS, 1.5)
    with pytest.raises(ContractError):
        encode(planted, np.ones((2, 3)), 0.1)


def test_tiny_eps_prime_is_raised_to_fit_exponent_field(planted):
    E = encode(planted, ANCHORS, 1e-9)
    assert E.eps_prime > 1e-9
    assert E.exponent_limit <= I16_EXPONENT_CAP


def test_malformed_payloads(planted):
    payload = serialize(encode(planted, ANCHORS, 0.02))
    with pytest.raises(FormatError):
        deserialize(b"XXXX" + payload[4:])
    with pytest.raises(FormatError):
        deserialize(payload[:10])
    with pytest.raises(FormatError):
        deserialize(payload[:-3])
    bad_version = payload[:4] + (7).to_bytes(4, "little") + payload[8:]
    with pytest.raises(FormatError):
        deserialize(bad_version)


def test_decode_rejects_bad_anchor_id(planted):
    E = encode(planted, ANCHORS, 0.02)
    E.anchor_ids[0] = 9
    with pytest.raises(FormatError):
        decode(E)


def test_parts_share_global_anchors(planted):
    parts = [planted.subset(np.arange(100)), planted.subset(np.arange(100, 150))]
    encoded = encode_against_global(parts, ANCHORS, 0.02)
    assert [len(E) for E in encoded] == [100, 50]
    assert all(np.array_equal(E.anchors, ANCHORS) for E in encoded)


def _around_anchors(n, seed):
    generator = np.random.default_rng(seed)
    labels = generator.integers(0, len(ANCHORS), size=n)
    points = np.clip(np.rint(ANCHORS[labels] + generator.normal(0.0, 20.0, size=(n, 2))), 1, 1024)
    weights = generator.integers(1, 50, size=n).astype(float)
    return Dataset(points, weights, 1024)


def test_exponent_limits_survive_serialization(planted):
    E = encode(planted, ANCHORS, 0.02)
    back = deserialize(serialize(E))
    assert back.exponent_limit == E.exponent_limit
    assert back.weight_limit == E.weight_limit
    assert measure_bits(back).record_bits == measure_bits(E).record_bits
    assert measure_bits(back).total_bits == measure_bits(E).total_bits


def test_invalid_exponent_limits_are_rejected(planted):
    payload = serialize(encode(planted, ANCHORS, 0.02))
    # E_max ocupa os bytes 24..28 do cabeçalho
    zeroed = payload[:24] + (0).to_bytes(4, "little", signed=True) + payload[28:]
    with pytest.raises(FormatError):
        deserialize(zeroed)


def test_encoding_is_idempotent():
    X = _around_anchors(300, seed=4)
    E = encode(X, ANCHORS, 0.01)
    again = encode(decode(E), E.anchors, E.eps_prime)
    assert again.records_equal(E)
    assert again.eps_prime == E.eps_prime


def test_record_bits_do_not_grow_with_n():
    small = measure_bits(encode(_around_anchors(200, seed=1), ANCHORS, 0.01))
    large = measure_bits(encode(_around_anchors(400, seed=2), ANCHORS, 0.01))
    assert small.record_bits == large.record_bits
    assert large.n_records == 2 * small.n_records


def test_record_bits_closed_form_at_fine_resolution():
    generator = np.random.default_rng(8)
    anchors = generator.integers(1, 2**16, size=(8, 2)).astype(float)
    points = generator.integers(1, 2**16, size=(100, 2)).astype(float)
    E = encode(Dataset.from_points(points, delta=2**16), anchors, 1e-3)
    assert E.eps_prime == 1e-3
    e_max = exponent_limit(1e-3, offset_magnitude_bound(2, 2**16, DEFAULT_N_BOUND))
    assert E.exponent_limit == e_max
    weight_bits = math.ceil(math.log2(2 * E.weight_limit + 1))
    assert measure_bits(E).record_bits == 3 + 2 * (2 + math.ceil(math.log2(2 * e_max + 1))) + weight_bits
