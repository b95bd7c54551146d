#pragma once

// Inductive classification: all self-dual classes at length n are built
// layer by minimum weight from the complete classification at length n-2,
// with isomorph rejection by canonical form and exact mass certificates
// gating every layer.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sdc/equiv.hpp"
#include "sdc/massexact.hpp"

namespace sdc {

struct ClassRecord {
    GenMatrix canon;
    BigCount aut_order;
    std::vector<Perm> aut_gens;  // empty when loaded from disk
    std::vector<std::uint64_t> weight_dist;
    int min_weight = 0;
    std::string origin;
};

struct Layer {
    int n = 0;
    int d = 0;  // minimum weight of this layer; -1 for a mixed database
    std::vector<ClassRecord> records;
    bool certified = false;
};

struct ExtensionCandidate {
    std::uint32_t avec = 0;  // extension vector over the parent's message space
    GenMatrix code;          // the resulting self-dual length-n code
};

struct ClassifyOptions {
    int jobs = 1;
    bool use_orbit_reduction = true;
    std::uint64_t node_budget = 100'000'000;
    int spot_check_interval = 100;  // verify the paired intermediate codes every Nth keep
    std::function<void(const std::string&)> log;
    std::function<bool()> should_abort;  // polled between parents
};

// i2 + C for every class C at length n-2 (a bijection onto the weight-2
// layer at length n).
Layer weight2_layer(const std::vector<ClassRecord>& prev_all, int n, const ClassifyOptions& opts = {});

// All extension candidates of exact minimum weight target_d grown from one
// parent class. Candidates come one per admissible extension-vector orbit.
std::vector<ExtensionCandidate> build_extensions(const ClassRecord& parent, int target_d,
                                                 const ClassifyOptions& opts = {});

// Canonicalize and deduplicate candidates from all parents. Not certified.
Layer assemble_layer(int n, int d, const std::vector<const ClassRecord*>& parents,
                     const ClassifyOptions& opts = {});

struct LengthClassification {
    int n = 0;
    std::vector<Layer> layers;  // ascending d, every layer certified
    bool total_certified = false;

    std::vector<const ClassRecord*> all_records() const;
    std::size_t total_classes() const;
};

// The empty-code classification at length 0, root of the induction.
LengthClassification base_classification();

// Classify length n from the certified classification at n-2. Layers are
// emitted for d = 2, 4, ... until the cumulative mass reaches the full mass
// of the length (or max_d, if given). Throws CertificateFailed when a layer
// certificate fails.
LengthClassification classify_length(int n, const LengthClassification& prior,
                                     std::optional<int> max_d = std::nullopt,
                                     const ClassifyOptions& opts = {});

// Classification chain for n = 2, 4, ..., n_max (result[i] holds length 2i+2).
std::vector<LengthClassification> classify_up_to(int n_max, std::optional<int> max_d = std::nullopt,
                                                 const ClassifyOptions& opts = {});

}  // namespace sdc
