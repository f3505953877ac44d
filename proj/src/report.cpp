#include "qzec/report.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

namespace qzec {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string report_to_json(const CapacityReport& rep) {
  std::ostringstream out;
  out << "{";
  out << "\"upsilon\": " << format_double(rep.upsilon);
  out << ", \"m0_qns\": " << rep.m0_qns;
  if (rep.dim_s) out << ", \"dim_s\": " << *rep.dim_s;
  if (rep.m0_se) out << ", \"m0_se\": " << *rep.m0_se;
  if (rep.c0_se_bits) out << ", \"c0_se_bits\": " << format_double(*rep.c0_se_bits);
  if (rep.unital) out << ", \"unital\": " << (*rep.unital ? "true" : "false");
  out << ", \"choi_rank\": " << rep.choi_rank;
  out << ", \"c0_qns_finite_n\": [";
  for (size_t i = 0; i < rep.c0_qns_finite_n.size(); ++i) {
    if (i) out << ", ";
    out << "[" << rep.c0_qns_finite_n[i].first << ", "
        << format_double(rep.c0_qns_finite_n[i].second) << "]";
  }
  out << "]";
  out << ", \"certified\": " << (rep.certified ? "true" : "false");
  out << ", \"gap\": " << format_double(rep.gap);
  if (!rep.discrepancies.empty()) {
    out << ", \"discrepancies\": [";
    for (size_t i = 0; i < rep.discrepancies.size(); ++i) {
      if (i) out << ", ";
      out << json(rep.discrepancies[i]).dump();
    }
    out << "]";
  }
  out << "}";
  return out.str();
}

std::string report_to_table(const CapacityReport& rep) {
  std::ostringstream out;
  out << "upsilon           " << format_double(rep.upsilon) << "\n";
  out << "m0_qns            " << rep.m0_qns << "\n";
  if (rep.dim_s) out << "dim_s             " << *rep.dim_s << "\n";
  if (rep.m0_qns_via_graph)
    out << "m0_qns (4/dim S)  " << rep.m0_qns_via_graph->num << "/"
        << rep.m0_qns_via_graph->den << "\n";
  if (rep.m0_se) out << "m0_se             " << *rep.m0_se << "\n";
  if (rep.c0_se_bits)
    out << "c0_se [bits]      " << format_double(*rep.c0_se_bits) << "\n";
  if (rep.unital) out << "unital            " << (*rep.unital ? "yes" : "no") << "\n";
  out << "choi_rank         " << rep.choi_rank << "\n";
  for (const auto& [n, v] : rep.c0_qns_finite_n)
    out << "c0_qns (n=" << n << ")      " << format_double(v) << " bits\n";
  out << "certified         " << (rep.certified ? "yes" : "no") << "\n";
  out << "gap               " << format_double(rep.gap) << "\n";
  for (const std::string& d : rep.discrepancies) out << "DISCREPANCY       " << d << "\n";
  return out.str();
}

CapacityReport report_from_json(const std::string& text) {
  json doc = json::parse(text);
  CapacityReport rep;
  rep.upsilon = doc.at("upsilon").get<double>();
  rep.m0_qns = doc.at("m0_qns").get<int>();
  if (doc.contains("dim_s")) rep.dim_s = doc["dim_s"].get<int>();
  if (doc.contains("m0_se")) rep.m0_se = doc["m0_se"].get<int>();
  if (doc.contains("c0_se_bits")) rep.c0_se_bits = doc["c0_se_bits"].get<double>();
  if (doc.contains("unital")) rep.unital = doc["unital"].get<bool>();
  rep.choi_rank = doc.at("choi_rank").get<int>();
  for (const auto& pair : doc.at("c0_qns_finite_n"))
    rep.c0_qns_finite_n.emplace_back(pair.at(0).get<int>(), pair.at(1).get<double>());
  rep.certified = doc.at("certified").get<bool>();
  rep.gap = doc.at("gap").get<double>();
  if (doc.contains("discrepancies"))
    for (const auto& d : doc["discrepancies"])
      rep.discrepancies.push_back(d.get<std::string>());
  return rep;
}

}  // namespace qzec
