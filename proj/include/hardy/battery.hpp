#pragma once

/// \file battery.hpp
/// Seeded batteries of randomized test functions for the verification
/// commands: hats, smooth bumps, sign-changing sums, plateaus, and their
/// 2-D products.  Fully deterministic given the seed.

#include <string>
#include <vector>

#include "hardy/rng.hpp"
#include "hardy/test_function.hpp"

namespace hardy {

/// `count` randomized 1-D test functions supported inside (lo, hi).
inline std::vector<TestFunction> battery_1d(int count, double lo, double hi,
                                            std::uint64_t seed) {
    if (!(hi > lo)) throw std::invalid_argument("battery_1d: lo < hi");
    std::vector<TestFunction> out;
    CounterRng rng(seed);
    const double span = hi - lo;
    for (int i = 0; i < count; ++i) {
        CounterRng r = rng.substream(i);
        double c = lo + span * (0.15 + 0.7 * r.u01(0));
        double w = span * (0.05 + 0.25 * r.u01(1));
        double a = std::max(lo + 0.02 * span, c - w);
        double b = std::min(hi - 0.02 * span, c + w);
        double amp = 0.25 + 1.5 * r.u01(2);
        TestFunction t;
        switch (i % 4) {
            case 0: {
                double m = a + (b - a) * (0.2 + 0.6 * r.u01(3));
                t = TestFunction::of(Func1D::hat(a, m, b, amp),
                                     "hat_" + std::to_string(i),
                                     TestFunctionKind::hat);
                break;
            }
            case 1:
                t = TestFunction::of(
                    Func1D::bump(0.5 * (a + b), 0.5 * (b - a), amp),
                    "bump_" + std::to_string(i), TestFunctionKind::bump);
                break;
            case 2: {
                // sign-changing pair of bumps
                double c1 = a + 0.3 * (b - a), c2 = a + 0.72 * (b - a);
                double rr = 0.22 * (b - a);
                t = TestFunction::of(Func1D::bump(c1, rr, amp) +
                                         Func1D::bump(c2, rr, -amp *
                                                                  (0.5 +
                                                                   r.u01(4))),
                                     "twobump_" + std::to_string(i),
                                     TestFunctionKind::bump);
                break;
            }
            default: {
                double ramp = (b - a) * (0.1 + 0.2 * r.u01(5));
                t = TestFunction::of(Func1D::plateau(a, b, ramp, amp),
                                     "plateau_" + std::to_string(i),
                                     TestFunctionKind::hat);
                break;
            }
        }
        out.push_back(std::move(t));
    }
    return out;
}

/// `count` randomized 2-D product functions supported inside the box.
inline std::vector<TestFunction> battery_2d(int count, double lo1, double hi1,
                                            double lo2, double hi2,
                                            std::uint64_t seed) {
    std::vector<TestFunction> out;
    CounterRng rng(seed);
    for (int i = 0; i < count; ++i) {
        CounterRng r = rng.substream(1000 + i);
        auto axis = [&](double lo, double hi, int k) {
            double span = hi - lo;
            double c = lo + span * (0.3 + 0.4 * r.u01(2 * k));
            double w = span * (0.12 + 0.18 * r.u01(2 * k + 1));
            return (i + k) % 2 == 0 ? Func1D::bump(c, w)
                                    : Func1D::hat(c - w, c, c + w);
        };
        TestFunction t;
        t.factors = {axis(lo1, hi1, 0), axis(lo2, hi2, 1)};
        t.name = "prod2d_" + std::to_string(i);
        t.kind = TestFunctionKind::product;
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace hardy
