#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "vipar/simulate.hpp"

namespace vipar {

/// Thrown on malformed input files (missing columns, non-numeric or
/// non-binary values); the message names the offending column or line.
class SchemaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Numbers destined for CSV are printed with 9 significant digits; JSON uses
/// the serializer's full round-trip precision.
std::string format_csv_double(double v);

/// Numeric CSV with a mandatory header line.
struct LabeledTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

LabeledTable read_csv(std::istream& in);

/// Columns named y, a0, a1 are reserved; every other column becomes a
/// covariate in file order, with an intercept prepended. Reserved columns
/// must be binary. If covariate_names is given it receives the design-row
/// labels, "intercept" first.
GopDataset table_to_gop(const LabeledTable& table,
                        std::vector<std::string>* covariate_names = nullptr);

/// Two-arm variant: y and a0 (the treatment) are reserved, a1 must be absent.
ArmDataset table_to_arm(const LabeledTable& table,
                        std::vector<std::string>* covariate_names = nullptr);

void write_sim_csv(std::ostream& out, const std::vector<SimRow>& rows);
void write_sweep_csv(std::ostream& out, const SweepReport& report);
nlohmann::json sweep_summary_json(const SweepReport& report);

} // namespace vipar
