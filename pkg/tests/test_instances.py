"""Instance model, generator, and file format."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sla_select.instances import (
    GeneratorSpec,
    Instance,
    InstanceFormatError,
    Item,
    Variant,
    generate_instance,
    load_instance,
    write_instance,
)

from conftest import make_instance


def spec(**overrides) -> GeneratorSpec:
    base = dict(
        n=20, capacity_fraction=0.5, correlation=0.0, noise_sigma=10.0,
        weight_max=1000, seed=42, variant=Variant.MAX,
    )
    base.update(overrides)
    return GeneratorSpec(**base)


class TestValidation:
    def test_item_bounds(self):
        with pytest.raises(ValueError):
            Item(0, 5)
        with pytest.raises(ValueError):
            Item(5, 0)

    def test_instance_needs_items(self):
        with pytest.raises(ValueError):
            Instance(items=(), capacity=10, variant=Variant.MAX, id="x")

    def test_instance_capacity_positive(self):
        with pytest.raises(ValueError):
            make_instance([1], [1], 0)

    @pytest.mark.parametrize(
        "bad",
        [
            dict(n=1),
            dict(capacity_fraction=0.0),
            dict(capacity_fraction=1.0),
            dict(correlation=1.5),
            dict(noise_sigma=-1.0),
            dict(weight_max=1),
            dict(seed=-1),
        ],
    )
    def test_spec_rejects(self, bad):
        with pytest.raises(ValueError):
            spec(**bad)


class TestGenerator:
    def test_deterministic(self):
        a, b = generate_instance(spec()), generate_instance(spec())
        assert a == b

    def test_seed_changes_items(self):
        a, b = generate_instance(spec(seed=1)), generate_instance(spec(seed=2))
        assert a.items != b.items
        assert a.id != b.id

    def test_shapes_and_bounds(self):
        inst = generate_instance(spec(n=50, weight_max=300))
        assert inst.n == 50
        assert all(1 <= it.weight <= 300 for it in inst.items)
        assert all(it.profit >= 1 for it in inst.items)

    def test_capacity_fraction(self):
        inst = generate_instance(spec())
        total = inst.total_weight()
        assert inst.capacity == int(np.floor(0.5 * total + 0.5))

    def test_positive_correlation_moves_corr_up(self):
        lo = generate_instance(spec(correlation=0.0, noise_sigma=0.0, n=200))
        hi = generate_instance(spec(correlation=0.9, noise_sigma=0.0, n=200))
        def corr(inst):
            w = inst.weights().astype(float)
            p = inst.profits().astype(float)
            return float(np.corrcoef(w, p)[0, 1])
        assert corr(hi) > corr(lo) + 0.3
        assert corr(hi) > 0.8

    def test_negative_correlation(self):
        inst = generate_instance(spec(correlation=-0.9, noise_sigma=0.0, n=200))
        w = inst.weights().astype(float)
        p = inst.profits().astype(float)
        assert float(np.corrcoef(w, p)[0, 1]) < -0.8

    def test_id_embeds_variant_and_n(self):
        inst = generate_instance(spec(variant=Variant.MIN, n=33))
        assert inst.id.startswith("gen-min-n33-")


class TestFileFormat:
    def test_round_trip(self, tmp_path):
        inst = generate_instance(spec())
        path = tmp_path / f"{inst.id}.txt"
        write_instance(inst, path)
        again = load_instance(path)
        assert again == inst

    def test_id_comes_from_stem(self, tmp_path):
        inst = make_instance([3, 4], [5, 6], 5)
        path = tmp_path / "renamed-thing.txt"
        write_instance(inst, path)
        assert load_instance(path).id == "renamed-thing"

    def test_header_shape(self, tmp_path):
        inst = make_instance([3, 4], [5, 6], 5, Variant.MIN)
        path = tmp_path / "x.txt"
        write_instance(inst, path)
        first = path.read_text().splitlines()[0]
        assert first == "2 5 min"

    @pytest.mark.parametrize(
        "text",
        [
            "",                          # empty file
            "2 5\n1 1\n2 2\n",           # missing variant token
            "2 5 max\n1 1\n",            # fewer items than declared
            "2 5 max\n1 1\n2 2\n3 3\n",  # more items than declared
            "2 5 up\n1 1\n2 2\n",        # unknown variant
            "x 5 max\n1 1\n2 2\n",       # non-integer n
            "2 5 max\n1\n2 2\n",         # malformed item line
            "2 5 max\n0 1\n2 2\n",       # zero weight
        ],
    )
    def test_rejects_malformed(self, tmp_path, text):
        path = tmp_path / "bad.txt"
        path.write_text(text)
        with pytest.raises(InstanceFormatError):
            load_instance(path)

    def test_error_carries_path_and_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("2 5 max\n1 1\nnope nope\n")
        with pytest.raises(InstanceFormatError) as err:
            load_instance(path)
        assert "bad.txt" in str(err.value)
        assert ":3:" in str(err.value)


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.tuples(st.integers(1, 10**6), st.integers(1, 10**6)), min_size=1, max_size=40),
    st.integers(1, 10**7),
    st.sampled_from([Variant.MAX, Variant.MIN]),
)
def test_round_trip_property(tmp_path_factory, pairs, capacity, variant):
    tmp = tmp_path_factory.mktemp("inst")
    inst = Instance(
        items=tuple(Item(w, p) for w, p in pairs),
        capacity=capacity,
        variant=variant,
        id="prop",
    )
    path = tmp / "prop.txt"
    write_instance(inst, path)
    assert load_instance(path) == inst
