#pragma once

// Config-driven experiments: YAML config -> validated ExperimentConfig ->
// CSV / JSON artifacts plus a manifest with SHA-256 digests.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "presliding/oscillator.hpp"
#include "presliding/reversal_analysis.hpp"
#include "presliding/validation.hpp"

namespace presliding::experiment {

enum class Kind { Simulate, Chain, Fig3, Fig4, Fig5, Fig6, Fig7, Validate };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;

[[nodiscard]] std::string_view kind_name(Kind kind) noexcept;
[[nodiscard]] std::optional<Kind> parse_kind(std::string_view name) noexcept;
[[nodiscard]] const std::vector<std::string_view>& kind_names();

/// Invalid or inconsistent configuration. `field` is the dotted path of
/// the offending key (empty for whole-document problems).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message);
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct ChainSection {
    double f0_over_fc = -1.0;  ///< initial reversal force in units of F_c
    int steps = 60;
    analysis::ChainMode mode = analysis::ChainMode::Exact;
    analysis::ApproxForm form = analysis::ApproxForm::Rederived;
};

struct ExperimentConfig {
    Kind kind = Kind::Validate;
    std::string name;
    std::filesystem::path output_dir = "output";
    FrictionParams params;
    /// sigma/F_c ratios, or F_c values for fig5.
    std::vector<double> sweep;
    SimConfig sim;  ///< params are copied in from `params`
    ChainSection chain;
    int grid_points = 100;  ///< force grid (fig3) or curve samples (fig4, fig5)
    validation::ValidationOptions validate;
};

/// "key.path=value" with a YAML scalar or flow-sequence value.
struct Override {
    std::string path;
    std::string value;
};

[[nodiscard]] Override parse_override(std::string_view text);

/// Builds a config from YAML text. Keys missing from the document take
/// the per-kind defaults; `forced_kind` (from the subcommand) must agree with
/// the document's kind when both are present.
[[nodiscard]] ExperimentConfig parse_config(std::string_view yaml_text,
                                            const std::vector<Override>& overrides = {},
                                            std::optional<Kind> forced_kind = std::nullopt);

[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path,
                                           const std::vector<Override>& overrides = {},
                                           std::optional<Kind> forced_kind = std::nullopt);

struct Artifact {
    std::string file;  ///< name relative to the output directory
    std::size_t rows = 0;
    std::string sha256;
};

struct RunResult {
    int exit_code = kExitOk;
    std::vector<Artifact> artifacts;  ///< excludes the manifest itself
    std::optional<validation::ValidationReport> report;
};

/// Runs the experiment and writes every artifact plus manifest.json into
/// cfg.output_dir.
[[nodiscard]] RunResult run(const ExperimentConfig& cfg);

[[nodiscard]] std::string sha256_hex(std::string_view data);

/// Name of the manifest written next to the artifacts.
inline constexpr std::string_view kManifestFile = "manifest.json";

}  // namespace presliding::experiment
