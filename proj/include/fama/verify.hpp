#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fama {

// Fast self-check suite behind the `verify` CLI subcommand: the
// eigenvector-eigenvalue identity, interlacing, Lemma-1 agreement and
// combiner/power-method consistency on small random instances.
struct VerifyReport {
    struct Section {
        std::string name;
        long checks = 0;
        long failures = 0;
        double worst_rel_error = 0;
    };
    std::vector<Section> sections;

    bool ok() const {
        for (const auto& s : sections)
            if (s.failures > 0) return false;
        return true;
    }
    std::string summary() const;
};

VerifyReport run_verification(std::uint64_t seed = 20240916u, int instances = 60);

}  // namespace fama
