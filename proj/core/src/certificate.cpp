#include <algorithm>

#include "fullproj/blocking.hpp"
#include "json.hpp"

namespace fullproj {

using Json = nlohmann::ordered_json;

std::string Certificate::to_json() const {
  const std::int64_t n = pattern.n();
  Json j;
  j["schemaVersion"] = kSchemaVersion;
  j["n"] = n;
  j["d"] = 2;
  Json cells = Json::array();
  for (const auto& c : pattern.cells().cells()) cells.push_back(c);
  j["pattern"] = std::move(cells);
  j["blocking"] = {{"traces", blocking.traces}, {"tangents", blocking.tangents}, {"traceCount", blocking.trace_count}};
  j["avoidance"] = {{"p", avoidance.p},
                    {"q", avoidance.q},
                    {"v", {avoidance.vx(n).to_string(), avoidance.vy(n).to_string()}}};
  j["metadata"] = {{"avoidanceScope", "half-grid vectors v = ((2p+1)/2n, (2q+1)/2n) only"}};
  return j.dump(2) + "\n";
}

Certificate Certificate::from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CertificateFormatError(std::string("malformed certificate JSON: ") + e.what());
  }
  try {
    if (j.at("schemaVersion").get<int>() != kSchemaVersion) throw CertificateFormatError("unsupported schemaVersion");
    if (j.at("d").get<int>() != 2) throw CertificateFormatError("certificate must have d = 2");
    const std::int64_t n = j.at("n").get<std::int64_t>();
    if (n < 1) throw CertificateFormatError("certificate n must be >= 1");
    std::vector<IntVector> cells;
    for (const auto& c : j.at("pattern")) {
      auto v = c.get<IntVector>();
      if (v.size() != 2) throw CertificateFormatError("pattern cells must have two coordinates");
      cells.push_back(std::move(v));
    }
    Pattern pattern(n, cells);
    BlockingVerdicts verdicts;
    const auto& b = j.at("blocking");
    verdicts.traces = b.at("traces").get<bool>();
    verdicts.tangents = b.at("tangents").get<bool>();
    verdicts.trace_count = b.at("traceCount").get<std::size_t>();
    const auto& a = j.at("avoidance");
    const std::int64_t p = a.at("p").get<std::int64_t>(), q = a.at("q").get<std::int64_t>();
    AvoidanceWitness w{p, q, {}, {}};
    const auto v = a.at("v").get<std::vector<std::string>>();
    if (v.size() != 2 || Rational::parse(v[0]) != w.vx(n) || Rational::parse(v[1]) != w.vy(n))
      throw CertificateFormatError("avoidance vector does not match (p, q)");
    return Certificate{std::move(pattern), verdicts, std::move(w)};
  } catch (const nlohmann::json::exception& e) {
    throw CertificateFormatError(std::string("certificate field error: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw CertificateFormatError(std::string("certificate value error: ") + e.what());
  } catch (const CertificateFormatError&) {
    throw;
  } catch (const Error& e) {
    throw CertificateFormatError(std::string("certificate value error: ") + e.what());
  }
}

}  // namespace fullproj
