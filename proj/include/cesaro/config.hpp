#pragma once

#include <cstddef>
#include <map>
#include <string>

namespace cesaro {

/// Numerical tolerances shared by every module.
///
/// Entries marked "relative" are scaled at the point of use (by the matrix
/// dimension or by a norm of the operand); the remaining entries are
/// absolute. All values can be overridden by name, see `set`.
struct Tolerances {
    double recon = 1e-9;   // relative: scaled by d
    double sing = 1e-12;   // relative: scaled by the operator norm of the operand
    double herm = 1e-10;
    double psd = 1e-10;
    double eig = 1e-8;     // eigenvalue clustering distance
    double unimod = 1e-8;  // dead zone around the unit circle
    double orth = 1e-8;
    double rank = 1e-7;    // relative: scaled by the norm of the limit
    double zero = 1e-7;
    double norm = 1e-6;
    double trace = 1e-6;   // relative: scaled by d
    double id = 1e-8;
    double synth = 1e-7;   // relative: scaled by the norm of the target
    double seq = 0.02;

    [[nodiscard]] double recon_for(std::size_t d) const noexcept { return recon * static_cast<double>(d); }
    [[nodiscard]] double trace_for(std::size_t d) const noexcept { return trace * static_cast<double>(d); }

    [[nodiscard]] std::map<std::string, double> as_map() const
    {
        return {
            {"recon", recon}, {"sing", sing}, {"herm", herm}, {"psd", psd},
            {"eig", eig}, {"unimod", unimod}, {"orth", orth}, {"rank", rank},
            {"zero", zero}, {"norm", norm}, {"trace", trace}, {"id", id},
            {"synth", synth}, {"seq", seq},
        };
    }

    /// Returns false if `name` is not a known tolerance.
    bool set(const std::string& name, double value)
    {
        double* slot = lookup(name);
        if (slot == nullptr) {
            return false;
        }
        *slot = value;
        return true;
    }

private:
    double* lookup(const std::string& name)
    {
        if (name == "recon") return &recon;
        if (name == "sing") return &sing;
        if (name == "herm") return &herm;
        if (name == "psd") return &psd;
        if (name == "eig") return &eig;
        if (name == "unimod") return &unimod;
        if (name == "orth") return &orth;
        if (name == "rank") return &rank;
        if (name == "zero") return &zero;
        if (name == "norm") return &norm;
        if (name == "trace") return &trace;
        if (name == "id") return &id;
        if (name == "synth") return &synth;
        if (name == "seq") return &seq;
        return nullptr;
    }
};

} // namespace cesaro
