#ifndef ICTHP_CORE_HPP_
#define ICTHP_CORE_HPP_

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace icthp {

enum class ErrorCode {
  ZeroVector,
  NonFinite,
  DimensionMismatch,
  DuplicateId,
  EmptyDataset,
  NonPositiveTemperature,
  NonPositiveThreshold,
  DegenerateProjection,
  DegenerateState,
  NonFiniteLoss,
  MissingCheckpoint,
  IoError,
  InvalidFlags,
  InvalidConfig,
  BadFormat,
  LockHeld,
};

const char* error_code_name(ErrorCode code);

/// Single exception type for the whole toolkit. The code is stable and
/// machine-parsable; the CLI prints it as `error[<code>]: <message>`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Unit-norm embedding vector. Construction goes through
/// normalize_embedding so the norm invariant holds everywhere downstream;
/// similarities then reduce to plain dot products.
class Embedding {
 public:
  Embedding() = default;

  int dim() const { return static_cast<int>(values_.size()); }
  const Eigen::VectorXd& values() const { return values_; }

  friend Embedding normalize_embedding(const Eigen::VectorXd& v);

 private:
  explicit Embedding(Eigen::VectorXd v) : values_(std::move(v)) {}
  Eigen::VectorXd values_;
};

/// Scale v to unit norm. Already-unit inputs (norm within 1e-12 of 1) are
/// returned unchanged, which makes normalization bitwise idempotent.
/// Throws NonFinite for NaN/Inf entries and ZeroVector when norm <= 1e-12.
Embedding normalize_embedding(const Eigen::VectorXd& v);

/// One dataset sample: three quality-ordered images plus the basic and
/// refined prompt embeddings.
struct TripletRecord {
  std::string id;
  Embedding img1;
  Embedding img2;
  Embedding img3;
  Embedding prompt_easy;
  Embedding prompt_ref;
  std::map<std::string, std::string> meta;

  int dim() const { return img1.dim(); }
  // k in {1,2,3}
  const Embedding& image(int k) const;
};

/// Ground-truth label tuple for a triplet under the basic (e) and refined
/// (r) prompts. e3 = r3 = 1 always; both rows are non-decreasing.
struct ICTLabelSet {
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 1.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 1.0;
};

enum class NegativesMode {
  AllImages,  // all three images of a sample act as in-batch negatives
  I3Only,     // restrict negatives to the high-quality image
};

const char* negatives_mode_name(NegativesMode mode);
NegativesMode parse_negatives_mode(const std::string& name);

/// Every scalar a run depends on. Serializes to JSON round-trip identical;
/// a stable hash of the effective config names output artifacts.
struct RunConfig {
  double theta = 0.30;   // containment threshold
  double tau = 1.0;      // score temperature
  double alpha = 20.0;   // negative-weight steepness
  double beta = 6.0;     // negative-weight threshold
  double lambda = 0.1;   // negative-loss balance
  double margin = 0.2;   // ranking margin
  double lr = 1e-3;
  int batch_size = 32;
  int epochs = 30;
  std::uint64_t seed = 42;
  int hidden_width = 32;
  NegativesMode negatives = NegativesMode::AllImages;

  void validate() const;  // throws InvalidConfig

  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);

  /// Key-value text file: `key = value` lines, `#` comments.
  static RunConfig from_file(const std::string& path);
  void apply_override(const std::string& key, const std::string& value);
};

/// FNV-1a over the canonical JSON dump, as 16 lowercase hex chars.
std::string config_hash(const RunConfig& config);

/// xoshiro256++ seeded via splitmix64. Pure integer state, so identical
/// seeds give identical sequences on every platform. Not shareable across
/// threads; clone by deriving sub-seeds instead.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// uniform in [0, 1) with 53 random bits
  double next_unit();
  /// standard normal (polar method)
  double next_normal();

  /// Independent generator for a named substream (epoch index, init, ...).
  SeededRng derive(std::uint64_t stream) const;

 private:
  std::uint64_t state_[4];
  std::uint64_t root_;
};

class ValidatedDataset;

/// All invariant violations in the given records, as human-readable
/// strings. Empty means the records form a valid dataset.
std::vector<std::string> dataset_violations(
    const std::vector<TripletRecord>& records);

/// Checks dimension agreement and id uniqueness; throws a typed Error
/// (EmptyDataset / DimensionMismatch / DuplicateId) describing every
/// violation found.
ValidatedDataset validate_dataset(std::vector<TripletRecord> records);

class ValidatedDataset {
 public:
  std::size_t size() const { return records_.size(); }
  int dim() const { return dim_; }
  const std::vector<TripletRecord>& records() const { return records_; }
  const TripletRecord& operator[](std::size_t i) const { return records_[i]; }

  friend ValidatedDataset validate_dataset(std::vector<TripletRecord> records);

 private:
  ValidatedDataset(std::vector<TripletRecord> records, int dim)
      : records_(std::move(records)), dim_(dim) {}
  std::vector<TripletRecord> records_;
  int dim_;
};

/// Fixed-order pairwise (cascade) summation; deterministic for a given
/// input order and better conditioned than running sums.
double pairwise_sum(const std::vector<double>& values);

}  // namespace icthp

#endif  // ICTHP_CORE_HPP_
