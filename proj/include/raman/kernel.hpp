#pragma once

// Momentum-resolved transition kernel of one pulse: for every grid sample
// p_i the final amplitude ladders reached from the two unit initial ladders
// (pure g_0 and pure e_0 at p_i). Includes application to wave packets,
// binary serialization and a hash-keyed cache.

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "raman/dynamics.hpp"
#include "raman/grid.hpp"
#include "raman/parallel.hpp"
#include "raman/sha256.hpp"

namespace raman {

/// Closed quasi-momentum intervals restricting where ladders are computed.
/// Samples outside keep identity ladders; a packet that vanishes there is
/// mapped identically either way.
using SupportIntervals = std::vector<std::pair<double, double>>;

inline bool support_contains(const SupportIntervals& s, double p) {
    if (s.empty()) return true;
    for (const auto& [lo, hi] : s)
        if (p >= lo && p <= hi) return true;
    return false;
}

struct TransitionKernel {
    PulseSpec pulse;
    MomentumGrid grid;
    int n_max = 0;
    double rel_tol = 1e-3;
    double abs_tol = 1e-6;
    std::vector<uint8_t> active;          // per sample
    std::vector<AmplitudeLadder> from_g;  // per sample
    std::vector<AmplitudeLadder> from_e;
};

/// Integrates both unit ladders for every grid sample inside the support.
inline TransitionKernel compute_kernel(const PulseSpec& pulse, const MomentumGrid& grid,
                                       double rel_tol, double abs_tol, int n_max,
                                       const SupportIntervals& support = {}, int jobs = 1) {
    TransitionKernel k;
    k.pulse = pulse;
    k.grid = grid;
    k.n_max = n_max;
    k.rel_tol = rel_tol;
    k.abs_tol = abs_tol;
    const int ns = grid.size();
    k.active.assign(ns, 0);
    k.from_g.resize(ns);
    k.from_e.resize(ns);

    parallel_for(ns, jobs, [&](int i) {
        const double p = grid.sample(i);
        if (!support_contains(support, p)) {
            AmplitudeLadder idg(p, n_max), ide(p, n_max);
            idg.g_at(0) = 1.0;
            ide.e_at(0) = 1.0;
            k.from_g[i] = std::move(idg);
            k.from_e[i] = std::move(ide);
            return;
        }
        auto sys = CoupledSystem::make(pulse, p, n_max);
        AmplitudeLadder init_g(p, n_max), init_e(p, n_max);
        init_g.g_at(0) = 1.0;
        init_e.e_at(0) = 1.0;
        try {
            k.from_g[i] = integrate_pulse(sys, init_g, rel_tol, abs_tol);
            k.from_e[i] = integrate_pulse(sys, init_e, rel_tol, abs_tol);
        } catch (const StepUnderflowError& e) {
            throw std::runtime_error(std::string(e.what()) + " at quasi-momentum p = " +
                                     std::to_string(p));
        }
        k.active[i] = 1;
    });
    return k;
}

/// psi_f(p_i + n hbar K) accumulates ladder amplitudes weighted by
/// psi_i(p_i). Grid spacing divides hbar K, so every deposit lands exactly
/// on a sample; deposits beyond the grid edge are dropped (size grids to
/// cover support + n_max when full norm accounting is needed).
inline SpinorWavePacket apply_kernel(const TransitionKernel& k, const SpinorWavePacket& psi) {
    if (!(psi.grid == k.grid))
        throw std::invalid_argument("apply_kernel: packet grid does not match kernel grid");
    SpinorWavePacket out(k.grid);
    const int ns = k.grid.size();
    const int m = k.grid.m;
    for (int i = 0; i < ns; ++i) {
        const cplx gi = psi.g_amp[i], ei = psi.e_amp[i];
        if (gi == cplx(0) && ei == cplx(0)) continue;
        if (!k.active[i]) {
            out.g_amp[i] += gi;
            out.e_amp[i] += ei;
            continue;
        }
        const auto& lg = k.from_g[i];
        const auto& le = k.from_e[i];
        for (int n = -k.n_max; n <= k.n_max; ++n) {
            const int j = i + n * m;
            if (j < 0 || j >= ns) continue;
            out.g_amp[j] += lg.g_at(n) * gi + le.g_at(n) * ei;
            out.e_amp[j] += lg.e_at(n) * gi + le.e_at(n) * ei;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// n_max escalation: start at order + 2 and raise until the probe population
// (target windows of the pulse's own process) changes by at most the mixed
// tolerance.

namespace detail {

// Population transferred into the pulse's resonant target ladder sites for a
// unit initial ladder at p = 0 (or the process's natural start site).
inline double probe_target_population(const PulseSpec& pulse, int n_max, double rel_tol,
                                      double abs_tol) {
    auto sys = CoupledSystem::make(pulse, 0.0, n_max);
    AmplitudeLadder init(0.0, n_max);
    int target = 0;
    bool target_excited = true;
    switch (pulse.process) {
        case Process::DoubleRest:
            init.g_at(0) = 1.0;
            target = pulse.order;
            target_excited = true;
            break;
        case Process::DopplerSingle: {
            // start at n0 with the process's initial internal state
            const bool start_excited = pulse.direction == Direction::ExcitedToGround;
            sys = CoupledSystem::make(pulse, static_cast<double>(pulse.n0), n_max);
            init = AmplitudeLadder(static_cast<double>(pulse.n0), n_max);
            if (start_excited)
                init.e_at(0) = 1.0;
            else
                init.g_at(0) = 1.0;
            target = 1;
            target_excited = !start_excited;
            break;
        }
        case Process::DoubleMirror:
            // mirror: e at -order mapped to +order; ladder starts at e_0 with
            // quasi-momentum -order
            sys = CoupledSystem::make(pulse, -static_cast<double>(pulse.order), n_max);
            init = AmplitudeLadder(-static_cast<double>(pulse.order), n_max);
            init.e_at(0) = 1.0;
            target = 2 * pulse.order;
            target_excited = true;
            break;
    }
    auto fin = integrate_pulse(sys, init, rel_tol, abs_tol);
    double pop = 0.0;
    if (std::abs(target) <= n_max)
        pop += target_excited ? std::norm(fin.e_at(target)) : std::norm(fin.g_at(target));
    if (pulse.process == Process::DoubleRest && target <= n_max)
        pop += target_excited ? std::norm(fin.e_at(-target)) : std::norm(fin.g_at(-target));
    return pop;
}

} // namespace detail

/// Truncation rule: accept n_max once raising it by one changes the probe
/// target population by no more than max(rel_tol, abs_tol).
inline int select_n_max(const PulseSpec& pulse, double rel_tol, double abs_tol,
                        int start = 0, int hard_limit = 24) {
    int base = pulse.order + 2;
    if (pulse.process == Process::DoubleMirror) base = 2 * pulse.order + 2;
    int n = std::max(start, base);
    const double tol = std::max(rel_tol, abs_tol);
    double prev = detail::probe_target_population(pulse, n, rel_tol, abs_tol);
    while (n < hard_limit) {
        double next = detail::probe_target_population(pulse, n + 1, rel_tol, abs_tol);
        if (std::abs(next - prev) <= tol) return n;
        prev = next;
        ++n;
    }
    return n;
}

// ---------------------------------------------------------------------------
// Serialization: little-endian binary, keyed by a SHA-256 of the pulse, grid
// and tolerances.

namespace detail {

inline void put_f64(std::string& s, double v) {
    char b[8];
    std::memcpy(b, &v, 8);
    s.append(b, 8);
}
inline void put_i32(std::string& s, int32_t v) {
    char b[4];
    std::memcpy(b, &v, 4);
    s.append(b, 4);
}

inline std::string kernel_key_blob(const PulseSpec& p, const MomentumGrid& g, double rel,
                                   double abs, int n_max) {
    std::string s = "raman-kernel-v1";
    put_i32(s, static_cast<int32_t>(p.shape.kind));
    put_f64(s, p.shape.width);
    put_f64(s, p.shape.window);
    put_f64(s, p.amplitude);
    put_i32(s, p.order);
    put_i32(s, static_cast<int32_t>(p.process));
    put_i32(s, p.n0);
    put_i32(s, static_cast<int32_t>(p.direction));
    put_f64(s, p.area);
    put_f64(s, p.delta);
    put_f64(s, p.alpha);
    put_f64(s, p.beta);
    put_i32(s, g.m);
    put_i32(s, g.half_n);
    put_f64(s, rel);
    put_f64(s, abs);
    put_i32(s, n_max);
    return s;
}

} // namespace detail

inline std::string kernel_hash(const PulseSpec& p, const MomentumGrid& g, double rel, double abs,
                               int n_max) {
    return sha256_hex(detail::kernel_key_blob(p, g, rel, abs, n_max));
}

inline void save_kernel(const TransitionKernel& k, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("save_kernel: cannot open " + path);
    const char magic[4] = {'R', 'K', 'R', 'N'};
    f.write(magic, 4);
    std::string hdr;
    detail::put_i32(hdr, 1); // version
    hdr += detail::kernel_key_blob(k.pulse, k.grid, k.rel_tol, k.abs_tol, k.n_max);
    detail::put_i32(hdr, k.grid.size());
    f.write(hdr.data(), static_cast<std::streamsize>(hdr.size()));
    auto write_ladder = [&](const AmplitudeLadder& l) {
        for (const auto& c : l.g) {
            double re = c.real(), im = c.imag();
            f.write(reinterpret_cast<const char*>(&re), 8);
            f.write(reinterpret_cast<const char*>(&im), 8);
        }
        for (const auto& c : l.e) {
            double re = c.real(), im = c.imag();
            f.write(reinterpret_cast<const char*>(&re), 8);
            f.write(reinterpret_cast<const char*>(&im), 8);
        }
    };
    for (int i = 0; i < k.grid.size(); ++i) {
        uint8_t a = k.active[i];
        f.write(reinterpret_cast<const char*>(&a), 1);
        write_ladder(k.from_g[i]);
        write_ladder(k.from_e[i]);
    }
    if (!f) throw std::runtime_error("save_kernel: write failed for " + path);
}

inline TransitionKernel load_kernel(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load_kernel: cannot open " + path);
    char magic[4];
    f.read(magic, 4);
    if (std::memcmp(magic, "RKRN", 4) != 0)
        throw std::runtime_error("load_kernel: bad magic in " + path);
    auto get_i32 = [&]() {
        int32_t v;
        f.read(reinterpret_cast<char*>(&v), 4);
        return v;
    };
    auto get_f64 = [&]() {
        double v;
        f.read(reinterpret_cast<char*>(&v), 8);
        return v;
    };
    int version = get_i32();
    if (version != 1) throw std::runtime_error("load_kernel: unsupported version");
    std::string tag(15, '\0');
    f.read(tag.data(), 15);
    TransitionKernel k;
    k.pulse.shape.kind = static_cast<PulseShape::Kind>(get_i32());
    k.pulse.shape.width = get_f64();
    k.pulse.shape.window = get_f64();
    k.pulse.amplitude = get_f64();
    k.pulse.order = get_i32();
    k.pulse.process = static_cast<Process>(get_i32());
    k.pulse.n0 = get_i32();
    k.pulse.direction = static_cast<Direction>(get_i32());
    k.pulse.area = get_f64();
    k.pulse.delta = get_f64();
    k.pulse.alpha = get_f64();
    k.pulse.beta = get_f64();
    k.grid.m = get_i32();
    k.grid.half_n = get_i32();
    k.rel_tol = get_f64();
    k.abs_tol = get_f64();
    k.n_max = get_i32();
    int ns = get_i32();
    if (ns != k.grid.size()) throw std::runtime_error("load_kernel: sample count mismatch");
    k.active.resize(ns);
    k.from_g.resize(ns);
    k.from_e.resize(ns);
    auto read_ladder = [&](double p) {
        AmplitudeLadder l(p, k.n_max);
        for (auto& c : l.g) {
            double re = get_f64(), im = get_f64();
            c = {re, im};
        }
        for (auto& c : l.e) {
            double re = get_f64(), im = get_f64();
            c = {re, im};
        }
        return l;
    };
    for (int i = 0; i < ns; ++i) {
        uint8_t a;
        f.read(reinterpret_cast<char*>(&a), 1);
        k.active[i] = a;
        double p = k.grid.sample(i);
        k.from_g[i] = read_ladder(p);
        k.from_e[i] = read_ladder(p);
    }
    if (!f) throw std::runtime_error("load_kernel: truncated file " + path);
    return k;
}

/// In-memory kernel cache with optional on-disk mirror.
class KernelCache {
public:
    explicit KernelCache(std::string dir = "", int jobs = 1) : dir_(std::move(dir)), jobs_(jobs) {}

    const TransitionKernel& get(const PulseSpec& pulse, const MomentumGrid& grid, double rel,
                                double abs, int n_max, const SupportIntervals& support = {}) {
        std::string key = kernel_hash(pulse, grid, rel, abs, n_max) + support_tag(support);
        auto it = mem_.find(key);
        if (it != mem_.end()) {
            ++hits_;
            return it->second;
        }
        if (!dir_.empty()) {
            auto path = std::filesystem::path(dir_) / (key + ".kern");
            if (std::filesystem::exists(path)) {
                ++hits_;
                return mem_.emplace(key, load_kernel(path.string())).first->second;
            }
        }
        ++misses_;
        TransitionKernel k = compute_kernel(pulse, grid, rel, abs, n_max, support, jobs_);
        if (!dir_.empty()) {
            std::filesystem::create_directories(dir_);
            auto path = std::filesystem::path(dir_) / (key + ".kern");
            save_kernel(k, path.string());
        }
        return mem_.emplace(key, std::move(k)).first->second;
    }

    int hits() const { return hits_; }
    int misses() const { return misses_; }

private:
    static std::string support_tag(const SupportIntervals& s) {
        if (s.empty()) return "";
        Sha256 h;
        for (const auto& [lo, hi] : s) {
            h.update(&lo, 8);
            h.update(&hi, 8);
        }
        return "-" + h.hex_digest().substr(0, 16);
    }

    std::string dir_;
    int jobs_;
    int hits_ = 0, misses_ = 0;
    std::unordered_map<std::string, TransitionKernel> mem_;
};

} // namespace raman
