import random

import pytest

from permder.certificates import (
    CertificateError, cur_certificate, decode_algebra, dim_certificate, dumps, encode_algebra,
    envelope_certificate, ideals_certificate, load, nice_certificate, special_certificate,
    verify_certificate,
)
from permder.fixtures import random_novikov, random_novikov_dialgebra, sls1_fixture, sls2q_fixture
from permder.presentations import builtin


def test_algebra_encoding_roundtrip():
    a = random_novikov_dialgebra(random.Random(2))
    assert decode_algebra(encode_algebra(a)) == a


def test_dumps_is_deterministic():
    c1 = dumps(envelope_certificate(random_novikov(random.Random(4)), 3, 10, 7))
    c2 = dumps(envelope_certificate(random_novikov(random.Random(4)), 3, 10, 7))
    assert c1 == c2


def test_certificates_verify():
    rng = random.Random(6)
    nov = random_novikov(rng)
    certs = [
        dim_certificate("\n".join(map(str, builtin("nov").identities)), "nov", 3),
        nice_certificate(sls2q_fixture()),
        nice_certificate(sls1_fixture()),
        special_certificate(nov, 3),
        ideals_certificate(nov, 3, "J", 5, 1),
        cur_certificate(random_novikov_dialgebra(rng)),
    ]
    for c in certs:
        assert verify_certificate(load(dumps(c))) == [], c["command"]


def test_tampered_witness_is_caught():
    cert = load(dumps(nice_certificate(sls2q_fixture())))
    cert["result"]["witness"]["multiplier"] = "x"
    assert verify_certificate(cert)


def test_foreign_json_rejected():
    with pytest.raises(CertificateError):
        verify_certificate({"format": "other"})
    with pytest.raises(CertificateError):
        load("[1, 2")
