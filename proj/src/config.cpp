#include "kclust/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "kclust/errors.hpp"

namespace kclust {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    const auto b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

double to_real(const std::string& key, const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw config_error("");
        return v;
    } catch (const std::exception&) {
        throw config_error("config: key '" + key + "' has non-numeric value '" + s + "'");
    }
}

long to_int(const std::string& key, const std::string& s) {
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used != s.size()) throw config_error("");
        return v;
    } catch (const std::exception&) {
        throw config_error("config: key '" + key + "' has non-integer value '" + s + "'");
    }
}

}  // namespace

ConfigMap ConfigMap::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

ConfigMap ConfigMap::parse_text(const std::string& text) {
    ConfigMap cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw config_error("config: line " + std::to_string(lineno) +
                               " is not a key = value assignment");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw config_error("config: line " + std::to_string(lineno) + " has an empty key");
        cfg.entries_[key] = value;
    }
    return cfg;
}

bool ConfigMap::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string ConfigMap::get_string(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw config_error("config: missing key '" + key + "'");
    return it->second;
}

std::string ConfigMap::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double ConfigMap::get_real(const std::string& key) const { return to_real(key, get_string(key)); }

double ConfigMap::get_real(const std::string& key, double fallback) const {
    return has(key) ? get_real(key) : fallback;
}

long ConfigMap::get_int(const std::string& key) const { return to_int(key, get_string(key)); }

long ConfigMap::get_int(const std::string& key, long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get_string(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw config_error("config: key '" + key + "' has non-boolean value '" + v + "'");
}

std::vector<double> ConfigMap::get_real_list(const std::string& key) const {
    const std::string raw = get_string(key);
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(to_real(key, trim(tok)));
    if (out.empty()) throw config_error("config: key '" + key + "' has an empty list");
    return out;
}

std::vector<long> ConfigMap::get_int_list(const std::string& key) const {
    const std::string raw = get_string(key);
    const std::size_t colon = raw.find(':');
    std::vector<long> out;
    if (colon != std::string::npos) {
        const long lo = to_int(key, trim(raw.substr(0, colon)));
        const long hi = to_int(key, trim(raw.substr(colon + 1)));
        if (hi < lo)
            throw config_error("config: key '" + key + "' has an empty range " + raw);
        for (long v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::stringstream ss(raw);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(to_int(key, trim(tok)));
    if (out.empty()) throw config_error("config: key '" + key + "' has an empty list");
    return out;
}

void ConfigMap::set(const std::string& key, const std::string& value) { entries_[key] = value; }

namespace {

// Recursive-descent parser over the component expression grammar.  `pos`
// advances past the parsed expression; surrounding whitespace is consumed.
class ComponentParser {
public:
    explicit ComponentParser(const std::string& text) : text_(text) {}

    Component parse() {
        Component c = expression();
        skip_ws();
        if (pos_ != text_.size())
            throw config_error("component: trailing text after expression: '" +
                               text_.substr(pos_) + "'");
        return c;
    }

private:
    Component expression() {
        skip_ws();
        const std::string head = identifier();
        expect('(');
        if (head == "gaussian") return gaussian_body();
        if (head == "uniform") return uniform_body();
        if (head == "mix") return mix_body();
        throw config_error("component: unknown constructor '" + head + "'");
    }

    Component gaussian_body() {
        std::vector<double> mean;
        skip_ws();
        while (peek() != ';') {
            mean.push_back(number());
            skip_ws();
        }
        if (mean.empty()) throw config_error("component: gaussian needs a mean");
        expect(';');
        const double variance = number();
        expect(')');
        Eigen::VectorXd m(static_cast<int>(mean.size()));
        for (std::size_t i = 0; i < mean.size(); ++i) m(static_cast<int>(i)) = mean[i];
        return GaussianComponent{std::move(m), variance};
    }

    Component uniform_body() {
        const double lo = number();
        expect(',');
        const double hi = number();
        expect(')');
        return UniformComponent{lo, hi};
    }

    Component mix_body() {
        FiniteMix mix;
        while (true) {
            mix.weights.push_back(number());
            expect(':');
            mix.parts.push_back(expression());
            skip_ws();
            if (peek() == '|') {
                ++pos_;
                continue;
            }
            break;
        }
        expect(')');
        return Component(std::move(mix));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() {
        if (pos_ >= text_.size()) throw config_error("component: unexpected end of expression");
        return text_[pos_];
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c)
            throw config_error(std::string("component: expected '") + c + "' at '" +
                               text_.substr(pos_) + "'");
        ++pos_;
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start) throw config_error("component: expected a constructor name");
        return text_.substr(start, pos_ - start);
    }

    double number() {
        skip_ws();
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text_.substr(pos_), &used);
        } catch (const std::exception&) {
            throw config_error("component: expected a number at '" + text_.substr(pos_) + "'");
        }
        pos_ += used;
        return v;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace

Component parse_component(const std::string& text) { return ComponentParser(text).parse(); }

bool has_mixture(const ConfigMap& cfg) { return cfg.has("mixture.weights"); }

MixingMeasure mixture_from_config(const ConfigMap& cfg) {
    const std::vector<double> weights = cfg.get_real_list("mixture.weights");
    std::vector<Component> comps;
    comps.reserve(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k) {
        const std::string key = "mixture.component." + std::to_string(k + 1);
        if (!cfg.has(key)) throw config_error("config: missing key '" + key + "'");
        comps.push_back(parse_component(cfg.get_string(key)));
    }
    try {
        return MixingMeasure(weights, std::move(comps));
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config: invalid mixture: ") + e.what());
    }
}

}  // namespace kclust
