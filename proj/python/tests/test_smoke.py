import itertools
import json
import os
from pathlib import Path

import pytest

import ldrn

DATA = Path(os.environ.get("LDRN_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def load(name):
    return ldrn.Network.from_json((DATA / name).read_text())


def test_field_arithmetic():
    f = ldrn.Field(2, 2)
    assert f.order == 4
    assert f.modulus == [1, 1, 1]
    assert f.mul(2, 2) == 3
    assert ldrn.Field(3).inv(2) == 2
    with pytest.raises(ldrn.Error, match="division by zero"):
        f.inv(0)
    with pytest.raises(ldrn.Error, match="not prime"):
        ldrn.Field(6)


def test_quickstart_code_decodes_every_message():
    net = load("quickstart_network.json")
    assert ldrn.multicast_capacity(net) == 3
    code = ldrn.build_code(net)
    assert ldrn.verify_code(net, code) == []
    for w in itertools.product(range(4), repeat=code.rate):
        decoded = ldrn.simulate(net, code, list(w))
        assert all(d == list(w) for d in decoded)
    assert ldrn.MulticastCode.from_json(code.to_json()) == code


def test_flow_and_unicast():
    net = load("gf2_rate3_network.json")
    assert ldrn.min_cut(net, 1) == 3
    assert ldrn.find_flow(net, 1, 4) is None
    flow = ldrn.find_flow(net, 1, 3)
    assert ldrn.verify_flow(net, flow) == []
    assert ldrn.unicast_transmit(net, flow, [1, 0, 1]) == [1, 0, 1]


def test_small_field_needs_lifting():
    net = load("gf2_three_dest_network.json")
    with pytest.raises(ldrn.FieldTooSmall):
        ldrn.build_code(net)
    k = ldrn.required_rounds(2, len(net.destinations))
    assert k == 2
    lifted = ldrn.lift_network(net, k)
    code = ldrn.build_code(lifted)
    assert ldrn.verify_code(lifted, code) == []
    assert ldrn.unpack(lifted.field, ldrn.pack(lifted.field, [[1, 0], [0, 1]])) == [[1, 0], [0, 1]]


def test_generator_and_randomized_mode():
    net = ldrn.generate(seed=3, node_counts=[1, 3, 2], p=5, destinations=2)
    assert net.validate() == []
    assert ldrn.Network.from_json(net.to_json()).to_json() == net.to_json()
    a = ldrn.build_code(net, mode="rand", seed=7)
    b = ldrn.build_code(net, mode="rand", seed=7)
    assert a == b
    assert ldrn.verify_code(net, a) == []


def test_cli_in_process():
    code, out, err = ldrn.run_cli(["capacity", str(DATA / "quickstart_network.json")])
    assert code == 0, err
    assert json.loads(out)["multicast_capacity"] == 3
    assert ldrn.run_cli(["nonsense"])[0] == 2
