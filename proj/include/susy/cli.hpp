#pragma once

#include "susy/propagators.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace susy::cli {

enum class MethodChoice { Closed, Theorem, Oracle };
MethodChoice parse_method(const std::string& s);
std::string to_string(MethodChoice m);

struct Range {
    double min = 0.0, max = 0.0;
    int count = 1;
    double at(int i) const { return count == 1 ? min : min + (max - min) * i / (count - 1); }
};

struct ChainEntry {
    std::string family;
    double a = 0.0, b = 0.0;
    int n = 0;
    int sign = 1;
    Action action = Action::RemoveLevel;
};

struct OracleSettings {
    std::optional<double> a, b;
    std::optional<double> spacing;
    std::optional<int> states;
};

struct ModelConfig {
    BaseKind base = BaseKind::FreeLine;
    std::vector<ChainEntry> chain;
    Range x{-3.0, 3.0, 13};
    Range y{-3.0, 3.0, 13};
    ComplexTime time{0.0, 0.5};
    MethodChoice method = MethodChoice::Closed;
    std::optional<MethodChoice> compare_with;
    double tolerance = 1e-4;
    double energy = -1.0;
    bool regularized = false;
    OracleSettings oracle;
    std::uint64_t seed = 0;
    bool override_admissibility = false;

    std::string source_text;   // raw document, hashed into the metadata
};

/// Parse a YAML document; throws ConfigurationError on schema violations.
ModelConfig load_config_text(const std::string& text);
ModelConfig load_config_file(const std::string& path);

/// Chain described by the config, admissibility checked unless overridden.
std::optional<DarbouxChain> build_chain(const ModelConfig& cfg);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string config_hash(const ModelConfig& cfg);

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    // ordered metadata; values are preformatted strings
    std::vector<std::pair<std::string, std::string>> metadata;
    double runtime_seconds = 0.0;
    int nx = 0, ny = 0;

    void set(const std::string& key, const std::string& value);
    std::optional<std::string> get(const std::string& key) const;
};

/// Shortest round-trip representation of a double.
std::string format_double(double v);

std::string to_csv(const ResultTable& t);
std::string to_json(const ResultTable& t, bool include_runtime);
ResultTable read_csv(const std::string& text);

// ---- commands ----------------------------------------------------------------

ResultTable cmd_potential(const ModelConfig& cfg);
ResultTable cmd_propagator(const ModelConfig& cfg);
ResultTable cmd_green(const ModelConfig& cfg);

/// Kernel selected by a method, listing valid routes on mismatch.
Kernel select_kernel(const ModelConfig& cfg, MethodChoice m);

struct CheckResult {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct VerifyReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    double runtime_seconds = 0.0;
    bool all_pass() const;
    std::string to_json(bool include_runtime) const;
};

VerifyReport cmd_verify(const std::string& suite, std::uint64_t seed);

enum class PlotKind { Line, Heatmap };
PlotKind parse_plot_kind(const std::string& s);

struct PlotResult {
    std::string svg;
    int minima = 0;          // local minima of the plotted line
    int width_cells = 0;     // heatmap grid dimensions
    int height_cells = 0;
};

/// Line plot of the last column against the first (at the y row nearest y0),
/// or heatmap of |K| on the (x, y) grid.
PlotResult cmd_plot(const ResultTable& table, PlotKind kind, double y0 = 0.0);

/// Strict local minima of a sampled sequence.
int count_local_minima(const std::vector<double>& v);

/// Worker count: SUSYPROP_THREADS if set, else hardware concurrency.
unsigned worker_count();

} // namespace susy::cli
