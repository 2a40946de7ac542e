#include "bubblespec/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bubblespec {

using nlohmann::ordered_json;

std::string format_number(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells)
{
    if (cells.size() != header_.size()) throw std::invalid_argument("csv: row width does not match the header");
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const
{
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing " + path.string());
}

void write_json(const std::filesystem::path& path, const ordered_json& j)
{
    write_text(path, j.dump(2) + "\n");
}

CsvTable profile_table(const ProfileCurve& p, const Weight* weight)
{
    std::vector<std::string> header = {"s", "h", "dh", "a2", "sqrt_g", "z", "dz"};
    if (weight) {
        check_aligned(p, *weight);
        header.push_back("omega");
    }
    CsvTable t(header);
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::vector<std::string> row = {format_number(p.s[i]),  format_number(p.h[i]),      format_number(p.dh[i]),
                                        format_number(p.a2[i]), format_number(p.sqrt_g[i]), format_number(p.z[i]),
                                        format_number(p.dz[i])};
        if (weight) row.push_back(format_number(weight->samples[i]));
        t.add_row(std::move(row));
    }
    return t;
}

ordered_json profile_json(const ProfileCurve& p)
{
    ordered_json j;
    j["kind"] = to_string(p.kind);
    j["n"] = p.n;
    j["samples"] = p.size();
    j["s_lo"] = p.s_lo;
    j["s_hi"] = p.s_hi;
    j["periodic"] = p.periodic;
    j["s_inf"] = p.s_inf;
    j["mean_curvature"] = p.mean_curvature;
    j["ricci"] = p.ricci;
    j["mc_residual"] = p.mc_residual;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : p.params) params[k] = v;
    j["params"] = params;
    return j;
}

void write_profile(const std::filesystem::path& csv_path, const ProfileCurve& p, const Weight* weight)
{
    write_text(csv_path, profile_table(p, weight).str());
    auto sidecar = csv_path;
    sidecar.replace_extension(".json");
    auto j = profile_json(p);
    if (weight) j["weight"] = weight->label;
    write_json(sidecar, j);
}

namespace {

ordered_json mode_json(const ModeCount& m)
{
    ordered_json j;
    j["l"] = m.l;
    j["multiplicity"] = m.multiplicity;
    j["neg"] = m.neg;
    j["zero"] = m.zero;
    j["smallest"] = m.smallest;
    j["certified_positive"] = m.certified_positive;
    return j;
}

}  // namespace

ordered_json to_json(const IndexReport& r)
{
    ordered_json j;
    j["surface"] = r.surface;
    j["n"] = r.n;
    j["weight"] = r.weight;
    j["bc"] = to_string(r.bc);
    j["total_index"] = r.total_index;
    j["total_nullity"] = r.total_nullity;
    j["zero_tol"] = r.zero_tol;
    j["zero_tol_defaulted"] = r.zero_tol_defaulted;
    j["error_estimate"] = r.error_estimate;
    j["tol_warning"] = r.tol_warning;
    j["truncation"] = r.truncation;
    j["mesh"] = r.mesh;
    j["converged"] = r.converged;
    j["per_mode"] = ordered_json::array();
    for (const auto& m : r.per_mode) j["per_mode"].push_back(mode_json(m));
    j["sweep"] = ordered_json::array();
    for (const auto& s : r.sweep) {
        ordered_json e;
        e["S"] = s.S;
        e["mesh"] = s.mesh;
        e["index"] = s.index;
        e["nullity"] = s.nullity;
        e["modes"] = ordered_json::array();
        for (const auto& m : s.modes) e["modes"].push_back(mode_json(m));
        j["sweep"].push_back(e);
    }
    return j;
}

CsvTable index_table(const IndexReport& r)
{
    CsvTable t({"l", "multiplicity", "neg", "zero", "lambda_min"});
    for (const auto& m : r.per_mode)
        t.add_row({std::to_string(m.l), std::to_string(m.multiplicity), std::to_string(m.neg), std::to_string(m.zero),
                   m.smallest.empty() ? "nan" : format_number(m.smallest.front())});
    return t;
}

std::string to_string(JacobiKind kind)
{
    switch (kind) {
    case JacobiKind::translation: return "translation";
    case JacobiKind::dilation: return "dilation";
    case JacobiKind::rotation: return "rotation";
    }
    return "unknown";
}

CsvTable classification_table(const std::vector<ClassificationRow>& rows)
{
    CsvTable t({"field", "kind", "mode", "membership", "growth_rate", "predicted_rate", "relative_increment",
                "residual"});
    for (const auto& r : rows)
        t.add_row({r.field, r.kind, std::to_string(r.mode), to_string(r.membership.membership),
                   format_number(r.membership.fitted_rate), format_number(r.membership.predicted_rate),
                   format_number(r.membership.relative_increment), format_number(r.residual)});
    return t;
}

ordered_json to_json(const SweepReport& r)
{
    ordered_json j;
    j["n"] = r.n;
    j["H"] = r.H;
    ordered_json lim;
    lim["spheres"] = r.limit.spheres;
    lim["catenoids"] = r.limit.catenoids;
    lim["sphere_index"] = r.limit.sphere_index;
    lim["sphere_nullity"] = r.limit.sphere_nullity;
    lim["catenoid_index"] = r.limit.catenoid_index;
    lim["catenoid_weighted_nullity"] = r.limit.catenoid_weighted_nullity;
    lim["from_solver"] = r.limit.from_solver;
    j["limit"] = lim;
    j["tally"] = {{"upper", r.tally.upper}, {"lower", r.tally.lower}};
    j["entries"] = ordered_json::array();
    for (const auto& e : r.entries) {
        ordered_json x;
        x["neck"] = e.neck;
        x["period"] = e.period;
        x["mc_residual"] = e.mc_residual;
        x["index"] = e.index;
        x["nullity"] = e.nullity;
        x["converged"] = e.converged;
        x["zero_tol"] = e.zero_tol;
        x["upper"] = to_string(e.upper);
        x["lower"] = to_string(e.lower);
        if (!e.error.empty()) x["error"] = e.error;
        j["entries"].push_back(x);
    }
    j["tail_necks"] = r.tail_necks;
    j["upper"] = to_string(r.upper);
    j["lower"] = to_string(r.lower);
    return j;
}

CsvTable sweep_table(const SweepReport& r)
{
    CsvTable t({"neck", "index", "nullity", "converged", "upper", "lower"});
    for (const auto& e : r.entries)
        t.add_row({format_number(e.neck), std::to_string(e.index), std::to_string(e.nullity),
                   e.converged ? "true" : "false", to_string(e.upper), to_string(e.lower)});
    return t;
}

CsvTable battery_table(const BatteryResult& b, bool with_gamma)
{
    std::vector<std::string> header = {"case", "seed", "p", "q"};
    if (with_gamma) header.push_back("gamma");
    for (const char* h : {"lhs", "rhs", "holds"}) header.push_back(h);
    CsvTable t(header);
    for (std::size_t k = 0; k < b.cases.size(); ++k) {
        const auto& c = b.cases[k];
        std::vector<std::string> row = {std::to_string(k), std::to_string(c.seed), format_number(c.p), format_number(c.q)};
        if (with_gamma) row.push_back(format_number(c.gamma));
        row.push_back(format_number(c.lhs));
        row.push_back(format_number(c.rhs));
        row.push_back(c.holds ? "true" : "false");
        t.add_row(std::move(row));
    }
    return t;
}

CsvTable capacity_table(const std::vector<CapacityTable>& tables, const std::vector<std::string>& geometry)
{
    if (tables.size() != geometry.size()) throw std::invalid_argument("capacity table: labels do not match");
    CsvTable t({"geometry", "n", "mesh", "eps", "energy", "fitted_exponent"});
    for (std::size_t k = 0; k < tables.size(); ++k)
        for (std::size_t i = 0; i < tables[k].eps.size(); ++i)
            t.add_row({geometry[k], std::to_string(tables[k].n), std::to_string(tables[k].mesh),
                       format_number(tables[k].eps[i]), format_number(tables[k].energy[i]),
                       format_number(tables[k].exponent)});
    return t;
}

}  // namespace bubblespec
