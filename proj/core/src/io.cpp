#include "bhlab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bhlab/errors.hpp"
#include "json.hpp"

namespace bhlab {
namespace {

using Json = nlohmann::ordered_json;

// Integral values print without a trailing ".0".
Json number(double v) {
  if (std::isfinite(v) && v == std::trunc(v) && std::abs(v) < 9007199254740992.0)
    return static_cast<std::int64_t>(v);
  return v;
}

Json exponent_array(const ExponentTuple& q) {
  Json arr = Json::array();
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (q.is_exact()) {
      const Rational& r = (*q.exact())[j];
      if (r.den() == 1)
        arr.push_back(r.num());
      else
        arr.push_back(r.str());
    } else {
      arr.push_back(number(q[j]));
    }
  }
  return arr;
}

Json maybe_exact(const std::optional<Rational>& r) {
  return r ? Json(r->str()) : Json(nullptr);
}

double as_double(const Json& v, const char* what) {
  if (!v.is_number()) throw ValidationError(std::string(what) + " must be a number");
  return v.get<double>();
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string tensor_to_json(const CoefTensor& t) {
  Json j;
  j["m"] = t.arity();
  j["n"] = t.side();
  j["field"] = std::string(to_string(t.field()));
  Json entries = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.field() == Field::complex)
      entries.push_back(Json::array({number(t.real()[i]), number(t.imag()[i])}));
    else
      entries.push_back(number(t.real()[i]));
  }
  j["entries"] = std::move(entries);
  return j.dump();
}

CoefTensor tensor_from_json(std::string_view text, std::size_t budget) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("tensor JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("tensor JSON must be an object");
  for (const char* key : {"m", "n", "field", "entries"})
    if (!j.contains(key)) throw ValidationError(std::string("tensor JSON missing '") + key + "'");
  if (!j["m"].is_number_integer() || !j["n"].is_number_integer() || j["m"].get<long long>() < 1 ||
      j["n"].get<long long>() < 1)
    throw ValidationError("tensor m and n must be positive integers");
  if (!j["field"].is_string()) throw ValidationError("tensor field must be a string");
  if (!j["entries"].is_array()) throw ValidationError("tensor entries must be an array");

  const auto m = j["m"].get<std::size_t>();
  const auto n = j["n"].get<std::size_t>();
  const Field field = parse_field(j["field"].get<std::string>());
  const std::size_t volume = checked_volume(n, m, budget);
  const Json& entries = j["entries"];
  if (entries.size() != volume)
    throw ValidationError("tensor has " + std::to_string(entries.size()) + " entries, expected n^m = " +
                          std::to_string(volume));

  std::vector<double> re(volume), im;
  if (field == Field::complex) im.resize(volume);
  for (std::size_t i = 0; i < volume; ++i) {
    const Json& e = entries[i];
    if (field == Field::complex) {
      if (e.is_array()) {
        if (e.size() != 2) throw ValidationError("complex entries must be [re, im] pairs");
        re[i] = as_double(e[0], "entry");
        im[i] = as_double(e[1], "entry");
      } else {
        re[i] = as_double(e, "entry");
      }
    } else {
      re[i] = as_double(e, "entry");
    }
  }
  return CoefTensor(m, n, field, std::move(re), std::move(im), budget);
}

CoefTensor read_tensor_file(const std::filesystem::path& path, std::size_t budget) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open tensor file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return tensor_from_json(buf.str(), budget);
}

ExponentTuple exponents_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("exponent JSON: ") + e.what());
  }
  if (!j.is_array()) throw ValidationError("exponents must be a JSON array");
  std::vector<std::string> tokens;
  for (const Json& v : j) {
    if (v.is_string())
      tokens.push_back(v.get<std::string>());
    else if (v.is_number_integer())
      tokens.push_back(std::to_string(v.get<long long>()));
    else if (v.is_number())
      tokens.push_back(format_double(v.get<double>()));
    else
      throw ValidationError("exponents must be numbers or rational strings");
  }
  return ExponentTuple::parse(tokens);
}

std::string exponents_to_json(const ExponentTuple& q) { return exponent_array(q).dump(); }

std::string estimate_to_json(const NormEstimate& est, bool with_certificate) {
  Json j;
  j["lower"] = number(est.lower);
  j["upper"] = est.upper ? number(*est.upper) : Json(nullptr);
  j["exact"] = est.exact;
  if (with_certificate) {
    Json cert = Json::array();
    for (const auto& arg : est.certificate) {
      Json v = Json::array();
      for (const auto& z : arg) {
        if (est.field == Field::complex)
          v.push_back(Json::array({number(z.real()), number(z.imag())}));
        else
          v.push_back(number(z.real()));
      }
      cert.push_back(std::move(v));
    }
    j["certificate"] = std::move(cert);
  }
  return j.dump();
}

std::string report_to_json(const ExponentTuple& q, const AdmissibilityReport& r,
                           std::string_view method, const std::optional<Partition>& partition) {
  Json j;
  j["tuple"] = exponent_array(q);
  if (partition) {
    j["partition"] = Json(std::vector<std::size_t>(partition->blocks().begin(),
                                                   partition->blocks().end()));
    j["m"] = partition->total();
  }
  j["method"] = std::string(method);
  j["admissible"] = r.admissible;
  Json witness = Json::array();
  for (std::size_t i : r.witness) witness.push_back(i + 1);
  j["witness"] = std::move(witness);
  j["max_deficit"] = number(r.max_deficit);
  j["max_deficit_exact"] = maybe_exact(r.exact_max_deficit);
  j["full_sum"] = number(r.full_sum);
  j["full_sum_exact"] = maybe_exact(r.exact_full_sum);
  j["reduced_sum"] = number(r.reduced_sum);
  j["reduced_sum_exact"] = maybe_exact(r.exact_reduced_sum);
  j["bound"] = number(r.bound);
  return j.dump();
}

void write_scaling_csv(std::ostream& out, const ScalingResult& r) {
  out << "family,k,m,n,seed,mixed_norm,norm_lower,norm_upper,ratio_lo,ratio_hi\n";
  for (const auto& row : r.rows) {
    out << to_string(r.family) << ',' << r.k << ',' << r.m << ',' << row.n << ',' << row.seed << ','
        << format_double(row.mixed_norm) << ',' << format_double(row.norm_lower) << ','
        << (row.norm_upper ? format_double(*row.norm_upper) : std::string()) << ','
        << format_double(row.ratio_lo) << ',' << format_double(row.ratio_hi) << '\n';
  }
}

std::string scaling_summary_json(const ScalingResult& r, const ExponentTuple& q) {
  Json j;
  j["family"] = std::string(to_string(r.family));
  j["q"] = exponent_array(q);
  j["k"] = r.k;
  j["m"] = r.m;
  j["rows"] = r.rows.size();
  if (r.fit) {
    j["slope"] = r.fit->slope;
    j["stderr"] = r.fit->std_error;
    j["r2"] = r.fit->r2;
    j["intercept"] = r.fit->intercept;
  } else {
    j["slope"] = nullptr;
    j["stderr"] = nullptr;
    j["r2"] = nullptr;
    j["intercept"] = nullptr;
  }
  j["predicted_slope"] = number(r.predicted_slope);
  j["max_deficit"] = number(r.max_deficit);
  j["verdict"] = std::string(to_string(r.verdict));
  return j.dump();
}

}  // namespace bhlab
