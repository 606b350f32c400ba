"""Compile the four-qubit worked example and print its angle table and period timings."""
from isingc.compiler import compile, format_trace
from isingc.fixtures import load_fig2, load_fig3_device, load_golden
from isingc.tracker import net_time

US = 1e6


def main():
    sched = compile(load_fig2(), load_fig3_device(), fallback=False)
    print(format_trace(sched.trace, 4))
    steps = {tp.label: tp.step for tp in sched.trace if tp.step is not None}
    b, d, f = steps["b"], steps["d"], steps["f"]
    measured = {
        "b_period": b.T, "d_tau_12": d.tau[1], "d_period": d.T,
        "d_first_not_q1": d.not_times[1][0], "d_net_01": net_time(d.timeline, (0, 1)),
        "f_period": f.T, "f_first_not_q2": f.not_times[2][0],
    }
    quoted = load_golden()["times_us"]
    print(f"{'quantity':16s} {'exact us':>10s} {'quoted':>8s} {'diff':>8s}")
    for k, v in measured.items():
        print(f"{k:16s} {v * US:10.2f} {quoted[k]:8d} {v * US - quoted[k]:8.2f}")


if __name__ == "__main__":
    main()
