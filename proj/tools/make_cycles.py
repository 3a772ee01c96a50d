#!/usr/bin/env python3
"""Generate the bundled drive-cycle traces.

The certified EPA HWFET and CARB LA92 speed traces are dynamometer data
tables; this repository does not redistribute them. Instead this script
deterministically synthesizes stand-in traces that match the published
summary character of each cycle (duration, distance, speed envelope, stop
count, acceleration aggressiveness) so the simulator has realistic bundled
inputs. The generated files say so in their headers.

Usage: python3 tools/make_cycles.py [outdir]
"""

import math
import sys
from pathlib import Path


def feasible_accel(v):
    """Acceleration cap [m/s^2] a medium-duty truck can sustain at speed v.

    Keeps synthesized targets trackable: roughly wheel power limited above
    ~12 m/s, launch limited below.
    """
    wheel_power_w = 150e3
    mass_kg = 6800.0
    drag = 2.93 * v * v + 600.0
    return max(0.25, min(2.6, (wheel_power_w / max(v, 3.0) - drag) / mass_kg))


def s_ramp(v0, v1, a_peak):
    """Raised-cosine speed ramp from v0 to v1 with peak acceleration a_peak.

    Accelerations are additionally capped by feasible_accel at the midpoint
    speed. Returns per-second samples, excluding the starting point.
    """
    dv = v1 - v0
    if abs(dv) < 1e-9:
        return []
    if dv > 0:
        a_peak = min(a_peak, 0.85 * feasible_accel(0.5 * (v0 + v1)))
    duration = max(2, int(round(abs(dv) * math.pi / (2.0 * a_peak))))
    out = []
    for i in range(1, duration + 1):
        t = i / duration
        out.append(v0 + dv * 0.5 * (1.0 - math.cos(math.pi * t)))
    return out


def cruise(v, seconds, wobble, period, phase):
    out = []
    for i in range(1, seconds + 1):
        w = wobble * math.sin(2.0 * math.pi * i / period + phase)
        w += 0.35 * wobble * math.sin(2.0 * math.pi * i / (period * 0.37) + 2.1 * phase)
        out.append(max(0.2, v + w))
    return out


class Builder:
    def __init__(self):
        self.v = [0.0]

    def last(self):
        return self.v[-1]

    def idle(self, seconds):
        self.v.extend([0.0] * seconds)

    def ramp_to(self, v1, a_peak):
        self.v.extend(s_ramp(self.last(), v1, a_peak))

    def cruise(self, seconds, wobble=0.5, period=40.0, phase=0.0):
        self.v.extend(cruise(self.last(), seconds, wobble, period, phase))

    def stop(self, a_peak, dwell):
        self.ramp_to(0.0, a_peak)
        self.idle(dwell)

    def trim_or_pad(self, total_samples):
        if len(self.v) > total_samples:
            raise SystemExit(f"trace too long: {len(self.v)} > {total_samples}")
        self.v.extend([0.0] * (total_samples - len(self.v)))

    def finish(self):
        return [round(max(0.0, x), 2) for x in self.v]


def make_hwfet_like(total=766):
    """Highway cycle: 766 samples, one sustained high-speed phase, stopped
    only at the endpoints. The last cruise stretches so the final decel
    lands exactly on the last sample (no idle tail)."""

    def build(fill, final_decel=0.6):
        b = Builder()
        b.ramp_to(3.5, 0.55)       # roll-out from the start line
        b.ramp_to(18.0, 1.1)
        b.cruise(30, wobble=0.5, period=35, phase=0.3)
        b.ramp_to(24.5, 0.55)
        b.cruise(95, wobble=0.6, period=55, phase=1.1)
        b.ramp_to(26.3, 0.35)
        b.cruise(60, wobble=0.35, period=45, phase=2.0)
        b.ramp_to(21.0, 0.45)          # slowdown for grade/traffic
        b.cruise(25, wobble=0.4, period=30, phase=0.7)
        b.ramp_to(14.5, 0.55)          # the cycle's mid dip
        b.cruise(12, wobble=0.3, period=25, phase=1.9)
        b.ramp_to(23.5, 0.65)
        b.cruise(90, wobble=0.55, period=60, phase=0.2)
        b.ramp_to(25.8, 0.3)
        b.cruise(110, wobble=0.45, period=50, phase=2.6)
        b.ramp_to(22.3, 0.4)
        b.cruise(55, wobble=0.5, period=38, phase=1.4)
        b.ramp_to(24.8, 0.45)
        b.cruise(fill, wobble=0.4, period=48, phase=0.9)
        b.ramp_to(4.0, 0.75)       # brake to walking pace, then creep to rest
        b.ramp_to(0.0, final_decel)
        return b

    base = build(60)
    for decel in (0.6, 0.55, 0.65, 0.5):
        for fill in range(50 + total - len(base.v), 80 + total - len(base.v)):
            b = build(fill, decel)
            if len(b.v) == total:
                return b.finish()
    raise SystemExit("hwfet trace could not be fit to the sample budget")


def make_la92_like():
    """Aggressive urban cycle: 1436 samples, frequent stops, hard
    accelerations, one short freeway excursion."""
    b = Builder()
    b.idle(8)
    # stop-and-go warm-up trips
    b.ramp_to(7.5, 1.6);  b.cruise(18, 0.5, 22, 0.4);  b.stop(1.5, 9)
    b.ramp_to(11.5, 2.0); b.cruise(30, 0.8, 28, 1.2);  b.stop(1.8, 14)
    b.ramp_to(15.5, 2.4); b.cruise(42, 1.0, 34, 0.8)
    b.ramp_to(9.0, 1.4);  b.cruise(12, 0.5, 20, 2.2)
    b.ramp_to(16.0, 2.2); b.cruise(25, 0.8, 30, 1.7);  b.stop(2.0, 6)
    b.ramp_to(12.0, 2.1); b.cruise(35, 0.9, 26, 0.1);  b.stop(1.6, 19)
    b.ramp_to(17.5, 2.5); b.cruise(55, 1.1, 40, 2.8)
    b.ramp_to(12.5, 1.3); b.cruise(15, 0.6, 24, 1.0);  b.stop(1.9, 5)
    b.ramp_to(14.0, 2.3); b.cruise(40, 0.9, 32, 0.5);  b.stop(2.2, 11)
    # arterial climb and freeway excursion
    b.ramp_to(20.0, 2.6); b.cruise(40, 1.0, 36, 1.5)
    b.ramp_to(27.0, 1.7); b.cruise(55, 1.0, 48, 2.4)
    b.ramp_to(29.5, 0.9); b.cruise(40, 0.7, 42, 0.6)
    b.ramp_to(22.0, 1.1); b.cruise(25, 0.8, 30, 1.8)
    b.ramp_to(26.0, 1.8); b.cruise(30, 0.9, 38, 0.3)
    b.ramp_to(0.0, 1.9);  b.idle(14)
    # dense urban second half
    b.ramp_to(13.5, 2.4); b.cruise(35, 0.9, 28, 2.0);  b.stop(2.0, 7)
    b.ramp_to(16.5, 2.6); b.cruise(50, 1.0, 35, 1.3);  b.stop(1.7, 21)
    b.ramp_to(11.0, 2.2); b.cruise(28, 0.7, 24, 0.9);  b.stop(2.1, 10)
    b.ramp_to(14.5, 2.5); b.cruise(45, 0.9, 30, 2.5);  b.stop(1.8, 13)
    b.ramp_to(9.5, 1.9);  b.cruise(20, 0.6, 22, 1.6);  b.stop(1.6, 8)
    b.ramp_to(15.0, 2.4); b.cruise(38, 0.9, 33, 0.2);  b.stop(2.0, 12)
    b.ramp_to(12.0, 2.3); b.cruise(42, 0.8, 27, 2.9);  b.stop(1.9, 9)
    b.ramp_to(8.0, 1.8);  b.cruise(22, 0.5, 20, 1.1);  b.stop(1.5, 10)
    b.ramp_to(13.0, 2.2); b.cruise(34, 0.8, 29, 1.4)
    b.ramp_to(6.5, 1.5);  b.cruise(9, 0.4, 18, 0.8)
    b.ramp_to(10.5, 2.1); b.cruise(24, 0.7, 25, 0.6);  b.stop(1.7, 12)
    b.trim_or_pad(1436)
    return b.finish()


def write_cycle(path, speeds, name, note):
    lines = [f"# source: {note}", "time_s,speed_mps"]
    lines += [f"{t},{v:g}" for t, v in enumerate(speeds)]
    path.write_text("\n".join(lines) + "\n")
    dist = sum(0.5 * (a + b) for a, b in zip(speeds, speeds[1:])) / 1000.0
    stops = sum(1 for a, b in zip(speeds, speeds[1:]) if a > 0 and b == 0)
    amax = max(b - a for a, b in zip(speeds, speeds[1:]))
    print(f"{name}: {len(speeds)} samples, {dist:.2f} km, "
          f"mean {sum(speeds)/len(speeds):.2f} m/s, max {max(speeds):.1f} m/s, "
          f"{stops} stops, max accel {amax:.2f} m/s^2")


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data")
    outdir.mkdir(parents=True, exist_ok=True)
    write_cycle(outdir / "hwfet.csv", make_hwfet_like(), "hwfet",
                "synthetic highway trace matching the published character of the "
                "EPA HWFET cycle (765 s, ~16.5 km, no intermediate stops); "
                "generated by tools/make_cycles.py, not the certified table")
    write_cycle(outdir / "la92.csv", make_la92_like(), "la92",
                "synthetic urban trace matching the published character of the "
                "CARB LA92 cycle (1435 s, ~15.8 km, frequent stops, aggressive "
                "accelerations); generated by tools/make_cycles.py, not the "
                "certified table")


if __name__ == "__main__":
    main()
