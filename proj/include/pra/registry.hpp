#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"

namespace pra {

enum class Realm { real_world, synthetic };

/// How a dataset participates in pair grouping. Pairs of two `reference`
/// datasets form the reference group; a `reference` paired with the single
/// kind of dataset under scrutiny (`inspecting`) forms the inspecting group;
/// anything touching a `neither` dataset belongs to no group.
enum class RoleTag { reference, inspecting, neither };

struct DatasetDescriptor {
    std::string id;
    Realm realm = Realm::real_world;
    bool train_only = false;   // usable for training only, never a test pair member
    RoleTag role = RoleTag::neither;
};

/// Ordered collection of dataset descriptors. Order is meaningful: it fixes
/// the canonical column order of every table the pipeline emits.
class DatasetRegistry {
public:
    void add(DatasetDescriptor d) {
        if (index_.count(d.id))
            throw InvalidRegistry("duplicate dataset id '" + d.id + "'");
        if (d.role == RoleTag::inspecting && d.train_only)
            throw InvalidRegistry("dataset '" + d.id +
                                  "' is inspecting but train_only; an inspected dataset "
                                  "must be able to appear in test pairs");
        index_.emplace(d.id, entries_.size());
        entries_.push_back(std::move(d));
    }

    const DatasetDescriptor* find(const std::string& id) const {
        auto it = index_.find(id);
        return it == index_.end() ? nullptr : &entries_[it->second];
    }

    /// Position in registry order, for canonical sorting of training columns.
    std::optional<std::size_t> position(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<DatasetDescriptor>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<DatasetDescriptor> entries_;
    std::unordered_map<std::string, std::size_t> index_;
};

inline const char* to_string(Realm r) {
    return r == Realm::real_world ? "real_world" : "synthetic";
}

inline const char* to_string(RoleTag t) {
    switch (t) {
    case RoleTag::reference: return "reference";
    case RoleTag::inspecting: return "inspecting";
    default: return "neither";
    }
}

} // namespace pra
