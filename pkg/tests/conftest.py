"""Pytest configuration and fixtures"""
import pytest

from app.core.config import settings
from app.services.digraph_service import Digraph
from app.services.family_service import (
    InftyParams,
    ThetaParams,
    build_cycle,
    build_infty,
    build_theta,
    build_theta_plus_arc,
)


@pytest.fixture
def complete_digraph_3():
    """Complete digraph on three vertices (all six arcs)"""
    return Digraph(3, tuple((u, v) for u in range(3) for v in range(3) if u != v))


@pytest.fixture
def cycle_5():
    return build_cycle(5)


@pytest.fixture
def theta_011():
    return build_theta(ThetaParams(0, 1, 1))


@pytest.fixture
def infty_23():
    return build_infty(InftyParams(2, 3))


@pytest.fixture
def dprime_5():
    """θ(0,1,2) plus the arc 2 -> 3"""
    return build_theta_plus_arc(5)


@pytest.fixture
def not_strong():
    """A 2-cycle with a pendant vertex reachable but not returning"""
    return Digraph(3, ((0, 1), (1, 0), (1, 2)))


@pytest.fixture
def sequential_workers(monkeypatch):
    """Keep worker pools single-threaded"""
    monkeypatch.setattr(settings, "SPECTRA_THREADS", 1)
    return 1
