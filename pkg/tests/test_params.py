"""Validation behavior of the parameter containers."""

from math import pi

import numpy as np
import pytest

from opinion_nav.core.params import (ExponentialAttention,
                                     GeneralNetworkParams, HillAttention,
                                     OpinionParams, OpinionState)


def hill():
    return HillAttention(u_lo=0.0, u_hi=1.5, R=7.0, n=7.0)


def test_opinion_params_accepts_reference_gains():
    p = OpinionParams(d=0.5, alpha=0.1, gamma=3.0, b=0.0, beta=pi / 4,
                      k=1.0, attention=hill())
    assert p.beta == pi / 4


@pytest.mark.parametrize("field,value", [
    ("d", 0.0), ("d", -1.0), ("alpha", 0.0), ("k", -2.0),
    ("beta", 0.0), ("beta", pi / 2 + 0.01),
])
def test_opinion_params_rejects_bad_gains(field, value):
    kwargs = dict(d=0.5, alpha=0.1, gamma=3.0, b=0.0, beta=pi / 4, k=1.0,
                  attention=hill())
    kwargs[field] = value
    with pytest.raises(ValueError):
        OpinionParams(**kwargs)


def test_hill_attention_validation():
    with pytest.raises(ValueError):
        HillAttention(u_lo=-0.1, u_hi=1.0, R=7.0, n=7.0)
    with pytest.raises(ValueError):
        HillAttention(u_lo=1.0, u_hi=0.5, R=7.0, n=7.0)
    with pytest.raises(ValueError):
        HillAttention(u_lo=0.0, u_hi=1.0, R=0.0, n=7.0)
    with pytest.raises(ValueError):
        HillAttention(u_lo=0.0, u_hi=1.0, R=7.0, n=0.0)


def test_exponential_attention_validation():
    ExponentialAttention(tau_u=1.0, m=1.0, c=1.0, R=11.0)
    for bad in ({"tau_u": 0.0}, {"m": 0.0}, {"c": 0.0}, {"R": 0.0}):
        kwargs = dict(tau_u=1.0, m=1.0, c=1.0, R=11.0)
        kwargs.update(bad)
        with pytest.raises(ValueError):
            ExponentialAttention(**kwargs)


def test_opinion_state_rejects_negative_attention():
    OpinionState(z=-2.0, u=0.0)
    with pytest.raises(ValueError):
        OpinionState(z=0.0, u=-1e-9)


def test_params_are_frozen():
    p = OpinionParams(d=0.5, alpha=0.1, gamma=3.0, b=0.0, beta=pi / 4,
                      k=1.0, attention=hill())
    with pytest.raises(AttributeError):
        p.d = 1.0


def test_network_params_shape_checks():
    adj = np.array([[0.0, 1.0], [1.0, 0.0]])
    ones = np.ones(2)
    p = GeneralNetworkParams(adjacency=adj, d=ones, u=ones, alpha=ones,
                             gamma=ones, b=np.zeros(2))
    assert p.n_agents == 2
    with pytest.raises(ValueError):
        GeneralNetworkParams(adjacency=np.eye(2), d=ones, u=ones,
                             alpha=ones, gamma=ones, b=ones)
    with pytest.raises(ValueError):
        GeneralNetworkParams(adjacency=adj, d=np.ones(3), u=ones,
                             alpha=ones, gamma=ones, b=ones)
    with pytest.raises(ValueError):
        GeneralNetworkParams(adjacency=adj, d=-ones, u=ones, alpha=ones,
                             gamma=ones, b=ones)
