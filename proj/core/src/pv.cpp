#include "mfodbo/pv.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mfodbo::pv {

namespace {

constexpr double kExpGuard = 700.0;     // double exp() overflow threshold
constexpr double kResidualCap = 1e150;  // keeps squared residual sums finite

// exp(a) - 1 with a linear continuation past the overflow threshold, so
// out-of-range parameter corners produce a large finite, still increasing
// penalty instead of inf. The continuation slope is capped to keep the value
// finite (and 0 * value well defined) for arbitrarily wild arguments.
double guarded_expm1(double a) {
    if (a > kExpGuard)
        return std::exp(kExpGuard) * std::min(a - (kExpGuard - 1.0), 1e3);
    return std::expm1(a);
}

double cap(double f) {
    if (f > kResidualCap)
        return kResidualCap;
    if (f < -kResidualCap)
        return -kResidualCap;
    return f;
}

} // namespace

double sdm_residual(const SdmParams& p, double v_load, double i_load, double temperature_k) {
    const double i_sd = p.i_sd_uA * 1e-6;
    const double drop = i_load * p.r_s + v_load;
    const double arg = drop * kElectronCharge / (temperature_k * p.n * kBoltzmann);
    const double f = p.i_ph - i_sd * guarded_expm1(arg) - drop / p.r_sh - i_load;
    return cap(f);
}

double ddm_residual(const DdmParams& p, double v_load, double i_load, double temperature_k) {
    const double i_sd1 = p.i_sd1_uA * 1e-6;
    const double i_sd2 = p.i_sd2_uA * 1e-6;
    const double drop = i_load * p.r_s + v_load;
    // Same per-diode exponent expression as the single-diode residual, so
    // switching a diode off degenerates to it bit for bit.
    const double arg1 = drop * kElectronCharge / (temperature_k * p.n1 * kBoltzmann);
    const double arg2 = drop * kElectronCharge / (temperature_k * p.n2 * kBoltzmann);
    const double f = p.i_ph - i_sd1 * guarded_expm1(arg1) - i_sd2 * guarded_expm1(arg2) -
                     drop / p.r_sh - i_load;
    return cap(f);
}

double module_residual(const ModuleParams& p, double v_load, double i_load,
                       double temperature_k) {
    const double i_sd = p.i_sd_uA * 1e-6;
    const double np = static_cast<double>(p.n_parallel);
    const double ns = static_cast<double>(p.n_series);
    const double drop = p.r_s * i_load / np + v_load / ns;
    const double arg = drop * kElectronCharge / (temperature_k * p.n * kBoltzmann);
    const double f =
        p.i_ph * np - i_sd * np * guarded_expm1(arg) - drop / (p.r_sh / np) - i_load;
    return cap(f);
}

IvDataset load_iv_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_iv_csv: cannot open " + path);
    IvDataset data;
    data.label = path;
    if (const auto slash = path.find_last_of('/'); slash != std::string::npos)
        data.label = path.substr(slash + 1);
    if (const auto dot = data.label.find_last_of('.'); dot != std::string::npos)
        data.label = data.label.substr(0, dot);

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        // Drop surrounding whitespace.
        const auto begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos)
            continue;
        const auto end = line.find_last_not_of(" \t");
        std::string trimmed = line.substr(begin, end - begin + 1);
        if (trimmed[0] == '#') {
            std::string header = trimmed.substr(1);
            const auto eq = header.find('=');
            if (eq == std::string::npos)
                continue; // plain comment
            auto strip = [](std::string s) {
                const auto b = s.find_first_not_of(" \t");
                if (b == std::string::npos)
                    return std::string();
                const auto e = s.find_last_not_of(" \t");
                return s.substr(b, e - b + 1);
            };
            const std::string key = strip(header.substr(0, eq));
            const std::string value = strip(header.substr(eq + 1));
            try {
                if (key == "T")
                    data.temperature_kelvin = std::stod(value);
                else if (key == "Ns")
                    data.n_series = std::stoi(value);
                else if (key == "Np")
                    data.n_parallel = std::stoi(value);
            } catch (const std::exception&) {
                throw std::runtime_error("load_iv_csv: bad header value at line " +
                                         std::to_string(line_no) + " of " + path);
            }
            continue;
        }
        const auto comma = trimmed.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("load_iv_csv: missing comma at line " +
                                     std::to_string(line_no) + " of " + path);
        try {
            auto parse_number = [](const std::string& s) {
                std::size_t used = 0;
                const double value = std::stod(s, &used);
                if (s.find_first_not_of(" \t", used) != std::string::npos)
                    throw std::invalid_argument("trailing junk");
                return value;
            };
            const double v = parse_number(trimmed.substr(0, comma));
            const double i = parse_number(trimmed.substr(comma + 1));
            data.points.push_back({v, i});
        } catch (const std::exception&) {
            throw std::runtime_error("load_iv_csv: malformed row at line " +
                                     std::to_string(line_no) + " of " + path);
        }
    }
    if (data.points.empty())
        throw std::runtime_error("load_iv_csv: no data rows in " + path);
    if (!(data.temperature_kelvin > 0.0))
        throw std::runtime_error("load_iv_csv: non-positive temperature in " + path);
    return data;
}

void save_iv_csv(const IvDataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("save_iv_csv: cannot open " + path);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "# T=%.17g\n# Ns=%d\n# Np=%d\n", data.temperature_kelvin,
                  data.n_series, data.n_parallel);
    out << buf;
    for (const auto& point : data.points) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", point.voltage, point.current);
        out << buf;
    }
}

std::string to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::sdm: return "sdm";
    case ModelKind::ddm: return "ddm";
    case ModelKind::module: return "module";
    }
    return "?";
}

std::size_t parameter_count(ModelKind kind) {
    return kind == ModelKind::ddm ? 7 : 5;
}

std::vector<std::string> parameter_names(ModelKind kind) {
    if (kind == ModelKind::ddm)
        return {"Iph_A", "Isd1_uA", "Rs_ohm", "Rsh_ohm", "n1", "Isd2_uA", "n2"};
    return {"Iph_A", "Isd_uA", "Rs_ohm", "Rsh_ohm", "n"};
}

SearchSpace parameter_space(ModelKind kind) {
    switch (kind) {
    case ModelKind::sdm:
        return SearchSpace({0.0, 0.0, 0.0, 0.0, 1.0}, {1.0, 1.0, 0.5, 100.0, 2.0});
    case ModelKind::ddm:
        return SearchSpace({0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0},
                           {1.0, 1.0, 0.5, 100.0, 2.0, 1.0, 2.0});
    case ModelKind::module:
        return SearchSpace({0.0, 0.0, 0.0, 0.0, 1.0}, {2.0, 50.0, 2.0, 2000.0, 50.0});
    }
    throw std::invalid_argument("parameter_space: unknown model");
}

namespace {

double point_residual(std::span<const double> x, ModelKind kind, const IvDataset& data,
                      double v, double i) {
    switch (kind) {
    case ModelKind::sdm: {
        const SdmParams p{x[0], x[1], x[2], x[3], x[4]};
        return sdm_residual(p, v, i, data.temperature_kelvin);
    }
    case ModelKind::ddm: {
        const DdmParams p{x[0], x[1], x[2], x[3], x[4], x[5], x[6]};
        return ddm_residual(p, v, i, data.temperature_kelvin);
    }
    case ModelKind::module: {
        const ModuleParams p{x[0], x[1], x[2], x[3], x[4], data.n_series, data.n_parallel};
        return module_residual(p, v, i, data.temperature_kelvin);
    }
    }
    throw std::invalid_argument("point_residual: unknown model");
}

} // namespace

double rmse(std::span<const double> x, const IvDataset& data, ModelKind kind) {
    if (x.size() != parameter_count(kind))
        throw std::invalid_argument("rmse: wrong parameter count for model");
    if (data.points.empty())
        throw std::invalid_argument("rmse: empty dataset");
    double sum = 0.0;
    for (const auto& point : data.points) {
        const double f = point_residual(x, kind, data, point.voltage, point.current);
        sum += f * f;
    }
    return std::sqrt(sum / static_cast<double>(data.points.size()));
}

ObjectiveSpec make_objective(ModelKind kind, IvDataset data) {
    ObjectiveSpec spec{to_string(kind) + ":" + data.label, parameter_space(kind), nullptr};
    spec.evaluate = [kind, data = std::move(data)](std::span<const double> x) {
        return rmse(x, data, kind);
    };
    return spec;
}

double solve_current(std::span<const double> x, ModelKind kind, const IvDataset& data,
                     double voltage, double i_measured_seed) {
    double current = i_measured_seed;
    for (int iter = 0; iter < 100; ++iter) {
        // f = model(current) - current; the fixed point of model().
        const double f = point_residual(x, kind, data, voltage, current);
        const double next = current + f;
        if (std::abs(next - current) < 1e-10)
            return next;
        current = next;
    }
    return current;
}

} // namespace mfodbo::pv
