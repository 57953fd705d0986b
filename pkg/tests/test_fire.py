from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from firedrill.errors import FireAlreadyOut
from firedrill.fire import (
    INTENSITY_MAX,
    CueKind,
    FireSpec,
    FireStatus,
    SeverityClass,
    cues_at,
    fire_tick,
    ignite,
    severity_class,
)

from .oracles import bfs_distance

TICK = 0.1


def burn(spec: FireSpec, seconds: float, agent: bool, where: str | None = None, dt: float = TICK):
    """Tick a fresh fire for `seconds`, applying (or not) every tick."""
    state = ignite(spec)
    ticks = round(seconds / dt)
    where = where or spec.compartment
    for _ in range(ticks):
        if state.status is not FireStatus.BURNING:
            break
        state = fire_tick(state, dt, agent_applied=agent, applier_compartment=where)
    return state


class TestExtinguishTiming:
    def test_l1_fire_out_after_45_seconds_of_application(self, levels):
        state = burn(levels["L1"].fire, 45.0, agent=True)
        assert state.status is FireStatus.EXTINGUISHED
        assert state.remaining_work_s == 0.0

    def test_l1_fire_still_burning_one_tick_earlier(self, levels):
        state = burn(levels["L1"].fire, 45.0 - TICK, agent=True)
        assert state.status is FireStatus.BURNING

    def test_l3_fire_out_after_17_seconds(self, levels):
        state = burn(levels["L3"].fire, 17.0, agent=True)
        assert state.status is FireStatus.EXTINGUISHED
        assert burn(levels["L3"].fire, 17.0 - TICK, agent=True).status is FireStatus.BURNING

    def test_l2_fire_shrugs_off_600_seconds_of_agent(self, levels):
        spec = levels["L2"].fire
        state = burn(spec, 600.0, agent=True)
        assert state.status is FireStatus.BURNING
        assert state.remaining_work_s == spec.extinguish_work_s

    def test_intensity_rises_by_exactly_growth_times_dt(self):
        spec = FireSpec("galley", 10.0, 2.5, True, 30.0, 2)
        state = fire_tick(ignite(spec), 0.1, agent_applied=False, applier_compartment="galley")
        assert state.intensity == 10.0 + 2.5 * 0.1

    def test_application_elsewhere_does_nothing(self, levels):
        spec = levels["L1"].fire
        state = burn(spec, 45.0, agent=True, where="corridor_mid")
        assert state.status is FireStatus.BURNING
        assert state.remaining_work_s == spec.extinguish_work_s

    def test_tick_on_extinguished_fire_raises(self, levels):
        state = burn(levels["L3"].fire, 17.0, agent=True)
        with pytest.raises(FireAlreadyOut):
            fire_tick(state, TICK, agent_applied=False, applier_compartment="engine_room")


class TestSeverityClass:
    def test_l1_controllable(self, levels):
        assert severity_class(levels["L1"].fire) is SeverityClass.CONTROLLABLE

    def test_l4_imminent_threat(self, levels):
        assert severity_class(levels["L4"].fire) is SeverityClass.IMMINENT_THREAT

    def test_extinguishable_is_controllable_regardless_of_growth(self):
        spec = FireSpec("galley", 5.0, 99.0, True, 10.0, 1)
        assert severity_class(spec) is SeverityClass.CONTROLLABLE


class TestCues:
    def test_observer_in_fire_compartment_sees_and_hears(self, levels):
        scenario = levels["L1"]
        state = ignite(scenario.fire)
        assert cues_at(state, scenario.layout, "galley") == {CueKind.VISUAL, CueKind.AUDITORY}

    def test_out_of_range_observer_gets_nothing(self, levels):
        scenario = levels["L1"]
        state = ignite(scenario.fire)
        # bridge is 3 hops from the galley, one beyond audible_hops = 2
        assert bfs_distance(scenario.layout, "bridge", "galley") == scenario.fire.audible_hops + 1
        assert cues_at(state, scenario.layout, "bridge") == set()

    def test_two_hops_away_hears_but_does_not_see(self, levels):
        scenario = levels["L1"]
        state = ignite(scenario.fire)
        assert bfs_distance(scenario.layout, "corridor_fwd", "galley") == 2
        assert cues_at(state, scenario.layout, "corridor_fwd") == {CueKind.AUDITORY}


# ---------------------------------------------------------------------------
# Properties


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=50, deadline=None)
def test_inextinguishable_never_goes_out(seed):
    rng = random.Random(seed)
    spec = FireSpec("galley", 60.0, 0.5, False, 60.0, 2)
    state = ignite(spec)
    for _ in range(300):
        state = fire_tick(
            state,
            TICK,
            agent_applied=rng.random() < 0.7,
            applier_compartment="galley" if rng.random() < 0.9 else "corridor_mid",
        )
        assert state.status is FireStatus.BURNING
        assert state.remaining_work_s == spec.extinguish_work_s


@given(st.integers(min_value=0, max_value=2**32))
@settings(max_examples=50, deadline=None)
def test_work_monotone_and_strict_only_under_application(seed):
    rng = random.Random(seed)
    spec = FireSpec("galley", 20.0, 0.0, True, 5.0, 2)
    state = ignite(spec)
    for _ in range(200):
        if state.status is not FireStatus.BURNING:
            break
        applied = rng.random() < 0.5
        where = "galley" if rng.random() < 0.8 else "corridor_mid"
        nxt = fire_tick(state, TICK, agent_applied=applied, applier_compartment=where)
        assert nxt.remaining_work_s <= state.remaining_work_s
        if not (applied and where == "galley"):
            assert nxt.remaining_work_s == state.remaining_work_s
        state = nxt


@given(st.floats(min_value=0.3, max_value=90.0, allow_nan=False), st.floats(min_value=0.05, max_value=1.0, allow_nan=False))
@settings(max_examples=60, deadline=None)
def test_work_accounting_within_one_tick(work_s, dt):
    spec = FireSpec("galley", 10.0, 0.0, True, work_s, 1)
    state = ignite(spec)
    ticks = 0
    while state.status is FireStatus.BURNING:
        state = fire_tick(state, dt, agent_applied=True, applier_compartment="galley")
        ticks += 1
        assert ticks < 10_000
    applied = ticks * dt
    assert work_s - 1e-6 <= applied < work_s + dt + 1e-6


@given(st.floats(min_value=0.0, max_value=150.0, allow_nan=False), st.floats(min_value=0.0, max_value=50.0, allow_nan=False))
@settings(max_examples=60, deadline=None)
def test_intensity_stays_clamped(initial, growth):
    spec = FireSpec("galley", initial, growth, False, 1.0, 1)
    state = ignite(spec)
    for _ in range(100):
        state = fire_tick(state, TICK, agent_applied=False, applier_compartment="galley")
        assert 0.0 <= state.intensity <= INTENSITY_MAX


def test_spec_invariants_enforced():
    with pytest.raises(ValueError):
        FireSpec("galley", -1.0, 0.0, True, 10.0, 1)
    with pytest.raises(ValueError):
        FireSpec("galley", 1.0, 0.0, True, 0.0, 1)
    with pytest.raises(ValueError):
        FireSpec("galley", 1.0, 0.0, True, 10.0, 0)
