#include "comsat/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "comsat/errors.hpp"

namespace comsat {

namespace {

struct Column {
  const char* name;
  const std::optional<double> CurvePoint::* field;
};

// Column orders are part of the file contract.
std::vector<Column> columns_for(const CurveSet& curve) {
  const bool mc = !curve.rows.empty() && curve.rows.front().mc_cov.has_value();
  const bool baseline = !curve.rows.empty() && curve.rows.front().baseline_cov.has_value();
  const bool mc_rate = !curve.rows.empty() && curve.rows.front().mc_rate.has_value();
  std::vector<Column> cols;
  if (curve.variable == SweepVariable::threshold_db) {
    cols.push_back({"analytic_cov", &CurvePoint::analytic_cov});
    if (mc) {
      cols.push_back({"mc_cov", &CurvePoint::mc_cov});
      cols.push_back({"mc_ci95", &CurvePoint::mc_cov_hw});
      if (baseline) cols.push_back({"baseline_cov", &CurvePoint::baseline_cov});
      cols.push_back({"empty_serving_frac", &CurvePoint::empty_serving_frac});
    }
  } else {
    cols.push_back({"analytic_rate", &CurvePoint::analytic_rate});
    cols.push_back({"analytic_se", &CurvePoint::analytic_se});
    if (mc_rate) {
      cols.push_back({"mc_rate", &CurvePoint::mc_rate});
      cols.push_back({"mc_se", &CurvePoint::mc_se});
      cols.push_back({"mc_ci95", &CurvePoint::mc_rate_hw});
    }
  }
  return cols;
}

const char* x_column_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::threshold_db: return "threshold_db";
    case SweepVariable::elevation_deg: return "elevation_deg";
    case SweepVariable::altitude_km: return "altitude_km";
    case SweepVariable::ut_density: return "ut_density_per_km2";
  }
  throw std::logic_error("unknown sweep variable");
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw numeric_error("cannot open output file: " + tmp.string());
    out << content;
    if (!out.flush()) throw numeric_error("failed writing output file: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string curve_to_csv(const CurveSet& curve, const nlohmann::json& metadata) {
  std::string out;
  for (const auto& [key, value] : metadata.items()) {
    out += "# " + key + " = " + value.dump() + "\n";
  }
  const auto cols = columns_for(curve);
  out += x_column_name(curve.variable);
  for (const auto& c : cols) {
    out += ',';
    out += c.name;
  }
  out += '\n';
  for (const auto& row : curve.rows) {
    out += format_number(row.x);
    for (const auto& c : cols) {
      out += ',';
      const auto& v = row.*(c.field);
      if (v) out += format_number(*v);
    }
    out += '\n';
  }
  return out;
}

std::string curve_to_json(const CurveSet& curve, const nlohmann::json& metadata) {
  nlohmann::json doc;
  doc["config"] = metadata;
  nlohmann::json rows = nlohmann::json::array();
  const auto cols = columns_for(curve);
  for (const auto& row : curve.rows) {
    nlohmann::json r;
    r[x_column_name(curve.variable)] = row.x;
    for (const auto& c : cols) {
      const auto& v = row.*(c.field);
      if (v) r[c.name] = *v;
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void write_curve(const std::string& path, const std::string& format, const CurveSet& curve,
                 const nlohmann::json& metadata) {
  atomic_write_file(path, format == "json" ? curve_to_json(curve, metadata)
                                           : curve_to_csv(curve, metadata));
}

}  // namespace comsat
