#include "mondeq/snapshot.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <vector>

#include "mondeq/common.hpp"

namespace mondeq {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

double parse_double(const std::string& token) {
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0')
        throw ValidationError("snapshot: bad numeric token '" + token + "'");
    return v;
}

namespace {

const char* norm_name(PotentialNormalization n) {
    switch (n) {
        case PotentialNormalization::NewtonianAtInfinity: return "newtonian_at_infinity";
        case PotentialNormalization::SurfaceZero: return "surface_zero";
        case PotentialNormalization::CenterZero: return "center_zero";
    }
    return "newtonian_at_infinity";
}

PotentialNormalization norm_from(const std::string& s) {
    if (s == "newtonian_at_infinity") return PotentialNormalization::NewtonianAtInfinity;
    if (s == "surface_zero") return PotentialNormalization::SurfaceZero;
    if (s == "center_zero") return PotentialNormalization::CenterZero;
    throw ValidationError("snapshot: unknown normalization '" + s + "'");
}

std::string ansatz_line(const AnsatzFunction& a) {
    std::string kind = (a.kind == AnsatzKind::FluidPsi) ? "fluid" : "kinetic";
    return kind + " " + format_full(a.exponent) + " " + format_full(a.coefficient);
}

AnsatzFunction ansatz_from(const std::string& line) {
    std::istringstream is(line);
    std::string kind, e, c;
    if (!(is >> kind >> e >> c)) throw ValidationError("snapshot: bad ansatz line '" + line + "'");
    double exponent = parse_double(e), coefficient = parse_double(c);
    if (kind == "fluid") return AnsatzFunction::fluid(exponent, coefficient);
    if (kind == "kinetic") return AnsatzFunction::kinetic(exponent, coefficient);
    throw ValidationError("snapshot: unknown ansatz kind '" + kind + "'");
}

}  // namespace

void write_model_snapshot(const std::string& path, const EquilibriumModel& model,
                          const std::optional<AnsatzFunction>& phi, bool timestamp) {
    std::ofstream os(path);
    if (!os) throw ValidationError("snapshot: cannot open '" + path + "' for writing");
    os << "# mond-equilib v1\n";
    if (timestamp) {
        std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        os << "# generated: " << buf << "\n";
    }
    os << "# columns: r rho M gN gM UN Ulam UM\n";
    os << "# central_value: " << format_full(model.central_value) << "\n";
    os << "# cutoff_energy: " << format_full(model.cutoff_energy) << "\n";
    os << "# support_radius: " << format_full(model.support_radius) << "\n";
    os << "# total_mass: " << format_full(model.total_mass) << "\n";
    os << "# ansatz: " << ansatz_line(model.ansatz) << "\n";
    if (phi) os << "# phi: " << ansatz_line(*phi) << "\n";
    os << "# lambda.family: "
       << (model.lambda.family == LambdaFamily::Sqrt ? "sqrt" : "simple") << "\n";
    os << "# lambda.a0: " << format_full(model.lambda.a0) << "\n";
    os << "# normalization: " << norm_name(model.fields.normalization()) << "\n";
    const auto& g = model.density.grid();
    const auto& rho = model.density.rho();
    const auto& m = model.density.mass_cum();
    const auto& f = model.fields;
    for (std::size_t i = 0; i < g.size(); ++i) {
        os << format_full(g[i]) << " " << format_full(rho[i]) << " " << format_full(m[i]) << " "
           << format_full(f.gN()[i]) << " " << format_full(f.gM()[i]) << " "
           << format_full(f.UN()[i]) << " " << format_full(f.Ulam()[i]) << " "
           << format_full(f.UM()[i]) << "\n";
    }
}

LoadedModel read_model_snapshot(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("snapshot: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(is, line) || line != "# mond-equilib v1")
        throw ValidationError("snapshot: missing or unsupported version header in '" + path + "'");

    LoadedModel out;
    double central = 0, cutoff = 0, support = 0, mass = 0, a0 = 1.0;
    std::optional<AnsatzFunction> ansatz;
    LambdaFamily family = LambdaFamily::Sqrt;
    PotentialNormalization norm = PotentialNormalization::NewtonianAtInfinity;
    bool have_columns = false;

    std::vector<double> r, rho, m, gN, gM, UN, Ulam, UM;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto key_is = [&](const char* k) { return line.rfind(std::string("# ") + k + ":", 0) == 0; };
            if (line.find(':') == std::string::npos) continue;
            std::string value = line.substr(line.find(':') + 1);
            while (!value.empty() && value.front() == ' ') value.erase(value.begin());
            if (key_is("columns")) {
                if (value != "r rho M gN gM UN Ulam UM")
                    throw ValidationError("snapshot: unexpected column layout '" + value + "'");
                have_columns = true;
            } else if (key_is("central_value")) {
                central = parse_double(value);
            } else if (key_is("cutoff_energy")) {
                cutoff = parse_double(value);
            } else if (key_is("support_radius")) {
                support = parse_double(value);
            } else if (key_is("total_mass")) {
                mass = parse_double(value);
            } else if (key_is("ansatz")) {
                ansatz = ansatz_from(value);
            } else if (key_is("phi")) {
                out.phi = ansatz_from(value);
            } else if (key_is("lambda.family")) {
                if (value == "sqrt")
                    family = LambdaFamily::Sqrt;
                else if (value == "simple")
                    family = LambdaFamily::Simple;
                else
                    throw ValidationError("snapshot: unknown lambda family '" + value + "'");
            } else if (key_is("lambda.a0")) {
                a0 = parse_double(value);
            } else if (key_is("normalization")) {
                norm = norm_from(value);
            }
            continue;
        }
        std::istringstream row(line);
        double v[8];
        for (int c = 0; c < 8; ++c) {
            std::string tok;
            if (!(row >> tok))
                throw ValidationError("snapshot: short data row in '" + path + "'");
            v[c] = parse_double(tok);
        }
        r.push_back(v[0]);
        rho.push_back(v[1]);
        m.push_back(v[2]);
        gN.push_back(v[3]);
        gM.push_back(v[4]);
        UN.push_back(v[5]);
        Ulam.push_back(v[6]);
        UM.push_back(v[7]);
    }
    if (!have_columns || r.size() < 2)
        throw ValidationError("snapshot: no data rows in '" + path + "'");
    if (!ansatz) throw ValidationError("snapshot: missing ansatz header in '" + path + "'");

    InterpolationFunction lambda = InterpolationFunction::make(family, a0);
    EquilibriumModel model;
    model.density = RadialDensity(std::vector<double>(r), std::move(rho));
    model.fields = FieldProfile::from_columns(std::move(r), std::move(gN), std::move(gM),
                                              std::move(UN), std::move(Ulam), std::move(UM), norm,
                                              mass, support, lambda);
    model.ansatz = *ansatz;
    model.lambda = lambda;
    model.central_value = central;
    model.cutoff_energy = cutoff;
    model.support_radius = support;
    model.total_mass = mass;
    out.model = std::move(model);
    return out;
}

}  // namespace mondeq
