#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace khmin {

struct Bigrading {
    int i = 0;  // homological grading
    int j = 0;  // quantum grading
    auto operator<=>(const Bigrading&) const = default;
};

inline int delta(const Bigrading& b) { return b.j - b.i; }

// Finitely supported map (i,j) -> dimension. Zero values are never stored.
class BigradedDims {
public:
    BigradedDims() = default;

    void add(Bigrading b, int d) {
        if (d == 0) return;
        auto it = dims_.find(b);
        if (it == dims_.end()) {
            dims_.emplace(b, d);
        } else {
            it->second += d;
            if (it->second == 0) dims_.erase(it);
        }
    }

    int at(Bigrading b) const {
        auto it = dims_.find(b);
        return it == dims_.end() ? 0 : it->second;
    }

    int total() const {
        int t = 0;
        for (const auto& [b, d] : dims_) t += d;
        return t;
    }

    bool empty() const { return dims_.empty(); }
    const std::map<Bigrading, int>& entries() const { return dims_; }
    bool operator==(const BigradedDims&) const = default;

    // sorted by (i, j), matching the map order
    nlohmann::json to_json() const {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& [b, d] : dims_)
            out.push_back({{"i", b.i}, {"j", b.j}, {"dim", d}});
        return out;
    }

    static BigradedDims from_json(const nlohmann::json& in) {
        BigradedDims out;
        for (const auto& e : in) out.add({e.at("i").get<int>(), e.at("j").get<int>()}, e.at("dim").get<int>());
        return out;
    }

private:
    std::map<Bigrading, int> dims_;
};

inline BigradedDims mirror_dims(const BigradedDims& d) {
    BigradedDims out;
    for (const auto& [b, v] : d.entries()) out.add({-b.i, -b.j}, v);
    return out;
}

}  // namespace khmin
