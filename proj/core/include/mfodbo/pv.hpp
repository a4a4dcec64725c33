#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mfodbo/types.hpp"

namespace mfodbo::pv {

inline constexpr double kElectronCharge = 1.60217646e-19; // C
inline constexpr double kBoltzmann = 1.3806503e-23;       // J/K

/// Saturation currents are stored in uA to match the optimization bounds and
/// converted to A exactly once, inside the residuals.
struct SdmParams {
    double i_ph;    // photocurrent, A
    double i_sd_uA; // diode saturation current, uA
    double r_s;     // series resistance, ohm
    double r_sh;    // shunt resistance, ohm
    double n;       // ideality factor
};

struct DdmParams {
    double i_ph;
    double i_sd1_uA;
    double r_s;
    double r_sh;
    double n1;
    double i_sd2_uA;
    double n2;
};

struct ModuleParams {
    double i_ph;
    double i_sd_uA;
    double r_s;
    double r_sh;
    double n;
    int n_series = 36;
    int n_parallel = 1;
};

/// Current-balance residuals with the measured current substituted on the
/// right-hand side (no implicit solve). Diode exponents above 700 are
/// replaced by a large finite penalty so out-of-range corners stay finite.
double sdm_residual(const SdmParams& p, double v_load, double i_load, double temperature_k);
double ddm_residual(const DdmParams& p, double v_load, double i_load, double temperature_k);
double module_residual(const ModuleParams& p, double v_load, double i_load, double temperature_k);

struct IvPoint {
    double voltage;
    double current;
};

struct IvDataset {
    std::vector<IvPoint> points;
    double temperature_kelvin = 306.15;
    int n_series = 36;  // module model only
    int n_parallel = 1; // module model only
    std::string label;
};

/// CSV loader. Leading '#' lines may carry key=value headers (T, Ns, Np);
/// every other line is "voltage,current". Malformed rows raise an error
/// naming the line number.
IvDataset load_iv_csv(const std::string& path);
void save_iv_csv(const IvDataset& data, const std::string& path);

enum class ModelKind { sdm, ddm, module };

std::string to_string(ModelKind kind);
std::size_t parameter_count(ModelKind kind);
std::vector<std::string> parameter_names(ModelKind kind);

/// Optimization box per model (saturation currents in uA):
///   SDM/DDM: Iph [0,1], Isd [0,1], Rs [0,0.5], Rsh [0,100], n [1,2]
///   module:  Iph [0,2], Isd [0,50], Rs [0,2],  Rsh [0,2000], n [1,50]
SearchSpace parameter_space(ModelKind kind);

/// Root-mean-square of the per-point residuals; the fitness minimized by the
/// parameter-identification experiments. Parameter layout:
///   SDM    [Iph, Isd, Rs, Rsh, n]
///   DDM    [Iph, Isd1, Rs, Rsh, n1, Isd2, n2]
///   module [Iph, Isd, Rs, Rsh, n]  (Ns/Np/T from the dataset)
double rmse(std::span<const double> x, const IvDataset& data, ModelKind kind);

/// Wraps a dataset into a minimization objective named
/// "<model>:<dataset label>".
ObjectiveSpec make_objective(ModelKind kind, IvDataset data);

/// Fixed-point solve of the implicit model current at a given voltage,
/// seeded at the measured current (tolerance 1e-10, at most 100 iterations).
/// Plotting support only; the fitness path never solves implicitly.
double solve_current(std::span<const double> x, ModelKind kind, const IvDataset& data,
                     double voltage, double i_measured_seed);

} // namespace mfodbo::pv
