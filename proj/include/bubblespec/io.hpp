#pragma once

#include "bubblespec/degeneration.hpp"
#include "bubblespec/jacobi.hpp"
#include "bubblespec/lorentz.hpp"
#include "bubblespec/neck.hpp"
#include "bubblespec/profile.hpp"
#include "bubblespec/spectral.hpp"
#include "bubblespec/weights.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace bubblespec {

// 17 significant digits, enough to read back the same double; "inf" and "nan" spelled out.
std::string format_number(double x);

// Minimal CSV writer: header once, rows of preformatted cells.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    void add_row(std::vector<std::string> cells);
    std::string str() const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j);

CsvTable profile_table(const ProfileCurve& profile, const Weight* weight = nullptr);
nlohmann::ordered_json profile_json(const ProfileCurve& profile);
// CSV of the samples plus a JSON sidecar with the scalar fields.
void write_profile(const std::filesystem::path& csv_path, const ProfileCurve& profile, const Weight* weight = nullptr);

nlohmann::ordered_json to_json(const IndexReport& report);
CsvTable index_table(const IndexReport& report);

struct ClassificationRow {
    std::string field;
    std::string kind;
    int mode = 0;
    MembershipResult membership;
    double residual = 0.0;
};

std::string to_string(JacobiKind kind);
CsvTable classification_table(const std::vector<ClassificationRow>& rows);

nlohmann::ordered_json to_json(const SweepReport& report);
CsvTable sweep_table(const SweepReport& report);

CsvTable battery_table(const BatteryResult& battery, bool with_gamma);
CsvTable capacity_table(const std::vector<CapacityTable>& tables, const std::vector<std::string>& geometry);

}  // namespace bubblespec
