#include "icthp/core.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace icthp {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorCode::NonPositiveThreshold: return "NonPositiveThreshold";
    case ErrorCode::DegenerateProjection: return "DegenerateProjection";
    case ErrorCode::DegenerateState: return "DegenerateState";
    case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::MissingCheckpoint: return "MissingCheckpoint";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidFlags: return "InvalidFlags";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::BadFormat: return "BadFormat";
    case ErrorCode::LockHeld: return "LockHeld";
  }
  return "Unknown";
}

Embedding normalize_embedding(const Eigen::VectorXd& v) {
  if (!v.allFinite()) {
    throw Error(ErrorCode::NonFinite, "embedding has NaN or Inf entries");
  }
  const double norm = v.norm();
  if (norm <= 1e-12) {
    throw Error(ErrorCode::ZeroVector,
                "embedding norm " + std::to_string(norm) + " <= 1e-12");
  }
  // One division brings the norm within ~sqrt(d)*eps of 1, well inside this
  // window, so a second call returns its input bit for bit.
  if (std::abs(norm - 1.0) <= 1e-12) {
    return Embedding(v);
  }
  return Embedding(v / norm);
}

const Embedding& TripletRecord::image(int k) const {
  switch (k) {
    case 1: return img1;
    case 2: return img2;
    case 3: return img3;
    default:
      throw Error(ErrorCode::InvalidFlags,
                  "image index " + std::to_string(k) + " not in {1,2,3}");
  }
}

const char* negatives_mode_name(NegativesMode mode) {
  return mode == NegativesMode::AllImages ? "all_images" : "i3_only";
}

NegativesMode parse_negatives_mode(const std::string& name) {
  if (name == "all_images") return NegativesMode::AllImages;
  if (name == "i3_only") return NegativesMode::I3Only;
  throw Error(ErrorCode::InvalidConfig,
              "negatives mode '" + name + "' (want all_images or i3_only)");
}

void RunConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::InvalidConfig, what);
  };
  if (!(theta > 0)) fail("theta must be > 0");
  if (!(tau > 0)) fail("tau must be > 0");
  if (!(alpha > 0)) fail("alpha must be > 0");
  if (!(beta >= 0)) fail("beta must be >= 0");
  if (!(lambda >= 0)) fail("lambda must be >= 0");
  if (!(margin > 0)) fail("margin must be > 0");
  if (!(lr >= 0)) fail("lr must be >= 0");
  if (batch_size < 1) fail("batch_size must be >= 1");
  if (epochs < 1) fail("epochs must be >= 1");
  if (hidden_width < 1) fail("hidden_width must be >= 1");
}

nlohmann::json RunConfig::to_json() const {
  // nlohmann objects keep keys sorted, so the dump is canonical.
  return nlohmann::json{
      {"theta", theta},
      {"tau", tau},
      {"alpha", alpha},
      {"beta", beta},
      {"lambda", lambda},
      {"margin", margin},
      {"lr", lr},
      {"batch_size", batch_size},
      {"epochs", epochs},
      {"seed", seed},
      {"hidden_width", hidden_width},
      {"negatives", negatives_mode_name(negatives)},
  };
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    c.theta = j.at("theta").get<double>();
    c.tau = j.at("tau").get<double>();
    c.alpha = j.at("alpha").get<double>();
    c.beta = j.at("beta").get<double>();
    c.lambda = j.at("lambda").get<double>();
    c.margin = j.at("margin").get<double>();
    c.lr = j.at("lr").get<double>();
    c.batch_size = j.at("batch_size").get<int>();
    c.epochs = j.at("epochs").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.hidden_width = j.at("hidden_width").get<int>();
    c.negatives = parse_negatives_mode(j.at("negatives").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig,
                std::string("bad config json: ") + e.what());
  }
  c.validate();
  return c;
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size() || value.empty()) {
    throw Error(ErrorCode::InvalidConfig,
                "value '" + value + "' for key '" + key + "' is not a number");
  }
  return out;
}

long long parse_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long long out = 0;
  try {
    out = std::stoll(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size() || value.empty()) {
    throw Error(ErrorCode::InvalidConfig,
                "value '" + value + "' for key '" + key + "' is not an integer");
  }
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  unsigned long long out = 0;
  try {
    out = std::stoull(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size() || value.empty()) {
    throw Error(ErrorCode::InvalidConfig,
                "value '" + value + "' for key '" + key +
                    "' is not an unsigned integer");
  }
  return out;
}

}  // namespace

void RunConfig::apply_override(const std::string& key,
                               const std::string& value) {
  if (key == "theta") theta = parse_double(key, value);
  else if (key == "tau") tau = parse_double(key, value);
  else if (key == "alpha") alpha = parse_double(key, value);
  else if (key == "beta") beta = parse_double(key, value);
  else if (key == "lambda") lambda = parse_double(key, value);
  else if (key == "margin") margin = parse_double(key, value);
  else if (key == "lr") lr = parse_double(key, value);
  else if (key == "batch_size") batch_size = static_cast<int>(parse_int(key, value));
  else if (key == "epochs") epochs = static_cast<int>(parse_int(key, value));
  else if (key == "seed") seed = parse_u64(key, value);
  else if (key == "hidden_width") hidden_width = static_cast<int>(parse_int(key, value));
  else if (key == "negatives") negatives = parse_negatives_mode(value);
  else {
    throw Error(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");
  }
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open config file " + path);
  }
  RunConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidConfig,
                  path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    c.apply_override(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  c.validate();
  return c;
}

std::string config_hash(const RunConfig& config) {
  const std::string dump = config.to_json().dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed) : root_(seed) {
  std::uint64_t x = seed;
  for (auto& word : state_) word = splitmix64(x);
}

std::uint64_t SeededRng::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double SeededRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::next_normal() {
  // Marsaglia polar method; transcendentals limited to sqrt and log.
  for (;;) {
    const double u = 2.0 * next_unit() - 1.0;
    const double v = 2.0 * next_unit() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

SeededRng SeededRng::derive(std::uint64_t stream) const {
  std::uint64_t x = root_ ^ (0x9e3779b97f4a7c15ULL * (stream + 0x632be59bd9b4e019ULL));
  const std::uint64_t mixed = splitmix64(x);
  return SeededRng(mixed);
}

namespace {

struct Violation {
  ErrorCode code;
  std::string message;
};

std::vector<Violation> collect_violations(
    const std::vector<TripletRecord>& records) {
  std::vector<Violation> out;
  if (records.empty()) {
    out.push_back({ErrorCode::EmptyDataset, "dataset is empty"});
    return out;
  }
  const int d = records.front().dim();
  std::set<std::string> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.id.empty()) {
      out.push_back({ErrorCode::DuplicateId,
                     "record " + std::to_string(i) + " has empty id"});
    }
    if (!seen.insert(r.id).second) {
      out.push_back({ErrorCode::DuplicateId, "duplicate id '" + r.id + "'"});
    }
    const Embedding* fields[5] = {&r.img1, &r.img2, &r.img3,
                                  &r.prompt_easy, &r.prompt_ref};
    for (const auto* e : fields) {
      if (e->dim() != d) {
        out.push_back({ErrorCode::DimensionMismatch,
                       "record '" + r.id + "' mixes dims " + std::to_string(d) +
                           " and " + std::to_string(e->dim())});
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> dataset_violations(
    const std::vector<TripletRecord>& records) {
  std::vector<std::string> out;
  for (auto& v : collect_violations(records)) out.push_back(v.message);
  return out;
}

ValidatedDataset validate_dataset(std::vector<TripletRecord> records) {
  const auto violations = collect_violations(records);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << violations.size() << " violation(s): ";
    for (std::size_t i = 0; i < violations.size() && i < 8; ++i) {
      if (i) msg << "; ";
      msg << violations[i].message;
    }
    throw Error(violations.front().code, msg.str());
  }
  const int d = records.front().dim();
  return ValidatedDataset(std::move(records), d);
}

double pairwise_sum(const std::vector<double>& values) {
  // Iterative cascade with a fixed combine order.
  if (values.empty()) return 0.0;
  std::vector<double> level(values);
  while (level.size() > 1) {
    std::vector<double> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      next.push_back(level[i] + level[i + 1]);
    }
    if (level.size() % 2 == 1) next.push_back(level.back());
    level.swap(next);
  }
  return level.front();
}

}  // namespace icthp
