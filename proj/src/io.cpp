#include "vipar/io.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace vipar {

std::string format_csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& field, std::size_t line_no, const std::string& column) {
    const std::string t = strip(field);
    if (!t.empty()) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == t.size()) return v;
    }
    throw SchemaError("line " + std::to_string(line_no) + ": column '" + column
                      + "' has non-numeric value '" + t + "'");
}

int require_binary(double v, std::size_t row, const std::string& column) {
    if (v == 0.0) return 0;
    if (v == 1.0) return 1;
    throw SchemaError("column '" + column + "' must be binary, got "
                      + format_csv_double(v) + " at data row " + std::to_string(row + 1));
}

// index of a reserved column, or npos
std::size_t find_column(const std::vector<std::string>& header, const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? std::string::npos : static_cast<std::size_t>(it - header.begin());
}

struct ColumnPlan {
    std::size_t y = 0;
    std::size_t a0 = 0;
    std::size_t a1 = 0; // npos in two-arm mode
    std::vector<std::size_t> covariates;
    std::vector<std::string> names; // design-row labels, intercept first
};

ColumnPlan plan_columns(const LabeledTable& table, bool with_a1) {
    ColumnPlan plan;
    plan.y = find_column(table.header, "y");
    if (plan.y == std::string::npos) throw SchemaError("required column 'y' is missing");
    plan.a0 = find_column(table.header, "a0");
    if (plan.a0 == std::string::npos) throw SchemaError("required column 'a0' is missing");
    plan.a1 = find_column(table.header, "a1");
    if (with_a1 && plan.a1 == std::string::npos)
        throw SchemaError("required column 'a1' is missing");
    if (!with_a1 && plan.a1 != std::string::npos)
        throw SchemaError("column 'a1' is not allowed in two-arm mode");

    plan.names.push_back("intercept");
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i == plan.y || i == plan.a0 || i == plan.a1) continue;
        plan.covariates.push_back(i);
        plan.names.push_back(table.header[i]);
    }
    return plan;
}

DesignRow design_for(const std::vector<double>& row, const ColumnPlan& plan) {
    DesignRow x;
    x.reserve(plan.covariates.size() + 1);
    x.push_back(1.0);
    for (std::size_t i : plan.covariates) x.push_back(row[i]);
    return x;
}

} // namespace

LabeledTable read_csv(std::istream& in) {
    LabeledTable table;
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("empty input: a header line is required");
    for (const std::string& h : split_line(line)) table.header.push_back(strip(h));
    if (table.header.empty()) throw SchemaError("header line has no columns");

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (strip(line).empty()) continue;
        const std::vector<std::string> fields = split_line(line);
        if (fields.size() != table.header.size())
            throw SchemaError("line " + std::to_string(line_no) + ": expected "
                              + std::to_string(table.header.size()) + " fields, got "
                              + std::to_string(fields.size()));
        std::vector<double> row(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i)
            row[i] = parse_double(fields[i], line_no, table.header[i]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

GopDataset table_to_gop(const LabeledTable& table, std::vector<std::string>* covariate_names) {
    const ColumnPlan plan = plan_columns(table, true);
    if (covariate_names) *covariate_names = plan.names;
    GopDataset data;
    data.rows.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        GopObservation obs;
        obs.x = design_for(row, plan);
        obs.a0 = require_binary(row[plan.a0], r, "a0");
        obs.a1 = require_binary(row[plan.a1], r, "a1");
        obs.y = require_binary(row[plan.y], r, "y");
        data.rows.push_back(std::move(obs));
    }
    if (data.rows.empty()) throw SchemaError("no data rows");
    return data;
}

ArmDataset table_to_arm(const LabeledTable& table, std::vector<std::string>* covariate_names) {
    const ColumnPlan plan = plan_columns(table, false);
    if (covariate_names) *covariate_names = plan.names;
    ArmDataset data;
    data.rows.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        ArmObservation obs;
        obs.x = design_for(row, plan);
        obs.trt = require_binary(row[plan.a0], r, "a0");
        obs.y = require_binary(row[plan.y], r, "y");
        data.rows.push_back(std::move(obs));
    }
    if (data.rows.empty()) throw SchemaError("no data rows");
    return data;
}

void write_sim_csv(std::ostream& out, const std::vector<SimRow>& rows) {
    out << "l0,a0,a1,y\n";
    for (const SimRow& r : rows)
        out << format_csv_double(r.l0) << ',' << r.a0 << ',' << r.a1 << ',' << r.y << '\n';
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
    for (std::size_t i = 0; i < report.coord_names.size(); ++i)
        out << report.coord_names[i] << ',';
    out << "status\n";
    for (std::size_t c = 0; c < report.coords.size(); ++c) {
        for (double v : report.coords[c]) out << format_csv_double(v) << ',';
        out << (report.ok[c] ? report.ok_label : report.fail_label) << '\n';
    }
}

nlohmann::json sweep_summary_json(const SweepReport& report) {
    return nlohmann::json{{"kind", report.kind},
                          {"cells", report.coords.size()},
                          {report.ok_label, report.ok_count()},
                          {report.fail_label, report.fail_count()}};
}

} // namespace vipar
