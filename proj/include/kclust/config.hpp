#ifndef KCLUST_CONFIG_HPP
#define KCLUST_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kclust/components.hpp"

namespace kclust {

// Flat key = value configuration text: one assignment per line, '#' starts a
// comment, keys may be dotted one level (mixture.component.1).  Unknown keys
// are tolerated at parse time and validated by the consumer.
class ConfigMap {
public:
    static ConfigMap parse_file(const std::string& path);
    static ConfigMap parse_text(const std::string& text);

    bool has(const std::string& key) const;
    // Typed getters raise config_error on missing keys or unparsable values.
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_real(const std::string& key) const;
    double get_real(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    long get_int(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // Comma-separated reals / integers.
    std::vector<double> get_real_list(const std::string& key) const;
    // Integers given as a comma list (1,2,7) or inclusive range (1:200).
    std::vector<long> get_int_list(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }
    void set(const std::string& key, const std::string& value);

private:
    std::map<std::string, std::string> entries_;
};

// Component expression grammar:
//   gaussian(m1 m2 ... ; variance)
//   uniform(lo, hi)
//   mix(w1: <component> | w2: <component> | ...)
Component parse_component(const std::string& text);

// Builds a mixture from keys mixture.weights and mixture.component.1 ... K.
MixingMeasure mixture_from_config(const ConfigMap& cfg);

// True when the config defines a mixture block.
bool has_mixture(const ConfigMap& cfg);

}  // namespace kclust

#endif  // KCLUST_CONFIG_HPP
