#include "slowlight/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

#include "slowlight/errors.hpp"

namespace slowlight::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Drops a trailing comment that is not inside quotes.
std::string_view strip_comment(std::string_view s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

std::string unquote(std::string_view s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return std::string(s.substr(1, s.size() - 2));
    return std::string(s);
}

double parse_number(std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw InvalidArgument("'" + std::string(text) + "' is not a number");
    }
    return value;
}

std::size_t parse_count(std::string_view text) {
    text = trim(text);
    std::size_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw InvalidArgument("'" + std::string(text) + "' is not a non-negative integer");
    }
    return value;
}

std::vector<std::string_view> split_list(std::string_view text) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(trim(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text = text.substr(comma + 1);
    }
    return out;
}

std::string format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct PendingBreakpoint {
    std::size_t line = 0;
    std::optional<double> time;
    std::vector<std::optional<double>> delays;  // sized once the stage count is known
    struct Assignment {
        std::size_t line;
        std::string field;
        bool velocity;
        std::optional<std::pair<std::size_t, std::size_t>> range;
        std::vector<double> values;
    };
    std::vector<Assignment> assignments;
};

class Parser {
public:
    RunConfig parse(std::string_view text) {
        std::size_t line_no = 0;
        while (!text.empty()) {
            const auto nl = text.find('\n');
            const auto raw = text.substr(0, nl);
            text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
            ++line_no;
            const auto line = trim(strip_comment(raw));
            if (line.empty()) continue;
            if (line.front() == '[') {
                section_header(line_no, line);
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError(line_no, std::string(line), "expected 'key = value'");
            }
            const auto key = trim(line.substr(0, eq));
            const auto value = trim(line.substr(eq + 1));
            if (key.empty()) throw ConfigError(line_no, "", "missing key before '='");
            if (value.empty()) throw ConfigError(line_no, std::string(key), "missing value");
            try {
                entry(line_no, key, value);
            } catch (const InvalidArgument& e) {
                throw ConfigError(line_no, qualified(key), e.what());
            }
        }
        return finish(line_no);
    }

private:
    enum class Section { top, pulse, schedule, breakpoint, expect };

    Section section_ = Section::top;
    std::map<std::string, std::pair<std::size_t, std::string>> seen_;  // qualified key -> line, value
    RunConfig config_;
    std::optional<std::size_t> inline_line_;
    std::map<std::string, std::size_t> section_lines_;
    std::optional<std::size_t> stages_;
    std::vector<PendingBreakpoint> breakpoints_;
    InlineExpectations expect_;
    std::optional<double> horizon_;

    std::string section_name() const {
        switch (section_) {
            case Section::pulse: return "pulse";
            case Section::schedule: return "schedule";
            case Section::breakpoint: return "breakpoint";
            case Section::expect: return "expect";
            case Section::top: break;
        }
        return "";
    }

    std::string qualified(std::string_view key) const {
        const auto s = section_name();
        return s.empty() ? std::string(key) : s + "." + std::string(key);
    }

    void section_header(std::size_t line, std::string_view text) {
        if (text.back() != ']') throw ConfigError(line, std::string(text), "unterminated section header");
        const auto name = trim(text.substr(1, text.size() - 2));
        if (name == "pulse") section_ = Section::pulse;
        else if (name == "schedule") section_ = Section::schedule;
        else if (name == "breakpoint") section_ = Section::breakpoint;
        else if (name == "expect") section_ = Section::expect;
        else throw ConfigError(line, std::string(name), "unknown section");
        if (section_ == Section::breakpoint) {
            breakpoints_.push_back(PendingBreakpoint{});
            breakpoints_.back().line = line;
        } else if (!section_lines_.emplace(std::string(name), line).second) {
            throw ConfigError(line, std::string(name), "section appears twice");
        }
        if (section_ != Section::expect && !inline_line_) inline_line_ = line;
    }

    void remember(std::size_t line, std::string_view key, std::string_view value) {
        const auto q = qualified(key);
        if (section_ == Section::breakpoint) return;  // repeated blocks, checked per block
        if (!seen_.emplace(q, std::make_pair(line, std::string(value))).second) {
            throw ConfigError(line, q, "given twice");
        }
    }

    void entry(std::size_t line, std::string_view key, std::string_view value) {
        switch (section_) {
            case Section::top: return top_entry(line, key, value);
            case Section::pulse: return remember(line, key, value);
            case Section::schedule:
                if (key != "stages") throw ConfigError(line, qualified(key), "unknown key");
                remember(line, key, value);
                stages_ = parse_count(value);
                if (*stages_ == 0) throw InvalidArgument("must be at least 1");
                return;
            case Section::breakpoint: return breakpoint_entry(line, key, value);
            case Section::expect: return expect_entry(line, key, value);
        }
    }

    void top_entry(std::size_t line, std::string_view key, std::string_view value) {
        remember(line, key, value);
        if (key == "scenario") {
            config_.scenario = unquote(value);
        } else if (key == "dt") {
            config_.dt = parse_seconds(value);
            if (!(config_.dt > 0.0)) throw InvalidArgument("must be positive");
        } else if (key == "output_dir") {
            config_.output_dir = unquote(value);
        } else if (key == "emit") {
            config_.emit = parse_emit(unquote(value));
        } else if (key == "decimate") {
            config_.decimate = parse_count(value);
            if (config_.decimate == 0) throw InvalidArgument("must be at least 1");
        } else if (key == "horizon") {
            horizon_ = parse_seconds(value);
            if (!(*horizon_ > 0.0)) throw InvalidArgument("must be positive");
            if (!inline_line_) inline_line_ = line;
        } else {
            throw ConfigError(line, std::string(key), "unknown key");
        }
    }

    void breakpoint_entry(std::size_t line, std::string_view key, std::string_view value) {
        auto& bp = breakpoints_.back();
        if (key == "t") {
            if (bp.time) throw ConfigError(line, "breakpoint.t", "given twice");
            bp.time = parse_seconds(value);
            if (*bp.time < 0.0) throw InvalidArgument("must not be negative");
            return;
        }
        PendingBreakpoint::Assignment a{line, qualified(key), false, std::nullopt, {}};
        auto name = key;
        const auto bracket = key.find('[');
        if (bracket != std::string_view::npos) {
            if (key.back() != ']') throw ConfigError(line, a.field, "unterminated stage range");
            name = trim(key.substr(0, bracket));
            const auto inner = key.substr(bracket + 1, key.size() - bracket - 2);
            const auto dots = inner.find("..");
            const std::size_t lo = parse_count(inner.substr(0, dots));
            const std::size_t hi = dots == std::string_view::npos ? lo : parse_count(inner.substr(dots + 2));
            if (hi < lo) throw InvalidArgument("stage range is reversed");
            a.range = std::make_pair(lo, hi);
        }
        if (name == "T") {
            a.velocity = false;
        } else if (name == "nu") {
            a.velocity = true;
        } else {
            throw ConfigError(line, a.field, "unknown key");
        }
        for (auto item : split_list(value)) {
            const double v = a.velocity ? parse_number(item) : parse_seconds(item);
            if (!(v > 0.0)) throw InvalidArgument("must be positive");
            a.values.push_back(a.velocity ? 1.0 / v : v);
        }
        if (a.range && a.values.size() != 1) {
            throw InvalidArgument("a stage range takes a single value");
        }
        bp.assignments.push_back(std::move(a));
    }

    void expect_entry(std::size_t line, std::string_view key, std::string_view value) {
        remember(line, key, value);
        const double v = key == "width" ? parse_seconds(value) : parse_number(value);
        if (!(v > 0.0)) throw InvalidArgument("must be positive");
        if (key == "velocity") expect_.velocity = v;
        else if (key == "velocity_tolerance") expect_.velocity_tolerance = v;
        else if (key == "width") expect_.width = v;
        else if (key == "width_tolerance") expect_.width_tolerance = v;
        else if (key == "max_distortion") expect_.max_distortion = v;
        else if (key == "min_distortion") expect_.min_distortion = v;
        else throw ConfigError(line, qualified(key), "unknown key");
    }

    const std::pair<std::size_t, std::string>* find(const std::string& q) const {
        const auto it = seen_.find(q);
        return it == seen_.end() ? nullptr : &it->second;
    }

    double pulse_seconds(const std::string& key, std::size_t end_line) const {
        const auto* v = find("pulse." + key);
        if (!v) throw ConfigError(end_line, "pulse." + key, "missing required key");
        try {
            return parse_seconds(v->second);
        } catch (const InvalidArgument& e) {
            throw ConfigError(v->first, "pulse." + key, e.what());
        }
    }

    PulseSpec build_pulse(std::size_t end_line) const {
        const auto pulse_line = section_lines_.count("pulse") ? section_lines_.at("pulse") : end_line;
        const auto* shape = find("pulse.shape");
        const std::string kind = shape ? unquote(shape->second) : "gaussian";
        static const char* gaussian_keys[] = {"shape", "amplitude", "center", "width", "start", "end"};
        static const char* sampled_keys[] = {"shape", "t0", "step", "samples"};
        auto check_keys = [&](const auto& allowed) {
            for (const auto& [q, v] : seen_) {
                if (q.rfind("pulse.", 0) != 0) continue;
                bool ok = false;
                for (const char* k : allowed) ok = ok || q == std::string("pulse.") + k;
                if (!ok) throw ConfigError(v.first, q, "unknown key for a " + kind + " pulse");
            }
        };
        if (kind == "gaussian") {
            check_keys(gaussian_keys);
            const auto* amp = find("pulse.amplitude");
            double amplitude = 1.0;
            if (amp) {
                try {
                    amplitude = parse_number(amp->second);
                } catch (const InvalidArgument& e) {
                    throw ConfigError(amp->first, "pulse.amplitude", e.what());
                }
            }
            const double center = pulse_seconds("center", pulse_line);
            const double width = pulse_seconds("width", pulse_line);
            const double start = pulse_seconds("start", pulse_line);
            const double end = pulse_seconds("end", pulse_line);
            try {
                return PulseSpec::gaussian(amplitude, center, width, start, end);
            } catch (const InvalidArgument& e) {
                throw ConfigError(pulse_line, "pulse", e.what());
            }
        }
        if (kind == "samples") {
            check_keys(sampled_keys);
            const double t0 = pulse_seconds("t0", pulse_line);
            const double step = pulse_seconds("step", pulse_line);
            const auto* list = find("pulse.samples");
            if (!list) throw ConfigError(pulse_line, "pulse.samples", "missing required key");
            std::vector<double> samples;
            try {
                for (auto item : split_list(list->second)) samples.push_back(parse_number(item));
                return PulseSpec::sampled(t0, step, std::move(samples));
            } catch (const InvalidArgument& e) {
                throw ConfigError(list->first, "pulse.samples", e.what());
            }
        }
        throw ConfigError(shape->first, "pulse.shape", "expected gaussian or samples");
    }

    DelaySchedule build_schedule(std::size_t end_line) const {
        if (!stages_) throw ConfigError(end_line, "schedule.stages", "missing required key");
        if (breakpoints_.empty()) throw ConfigError(end_line, "breakpoint", "schedule needs a [breakpoint]");
        const std::size_t n = *stages_;
        std::vector<DelaySchedule::Breakpoint> rows;
        std::vector<double> previous;
        for (const auto& bp : breakpoints_) {
            if (!bp.time) throw ConfigError(bp.line, "breakpoint.t", "missing required key");
            std::vector<std::optional<double>> row(n);
            if (!previous.empty()) {
                for (std::size_t i = 0; i < n; ++i) row[i] = previous[i];
            }
            for (const auto& a : bp.assignments) {
                if (a.range) {
                    if (a.range->second >= n) {
                        throw ConfigError(a.line, a.field, "stage index beyond the last stage " + std::to_string(n - 1));
                    }
                    for (std::size_t i = a.range->first; i <= a.range->second; ++i) row[i] = a.values[0];
                } else if (a.values.size() == 1) {
                    for (auto& r : row) r = a.values[0];
                } else if (a.values.size() == n) {
                    for (std::size_t i = 0; i < n; ++i) row[i] = a.values[i];
                } else {
                    throw ConfigError(a.line, a.field,
                                      "lists " + std::to_string(a.values.size()) + " values for " +
                                          std::to_string(n) + " stages");
                }
            }
            std::vector<double> delays(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (!row[i]) {
                    throw ConfigError(bp.line, "breakpoint.T",
                                      "no delay for stage " + std::to_string(i));
                }
                delays[i] = *row[i];
            }
            previous = delays;
            rows.push_back({*bp.time, std::move(delays)});
        }
        try {
            return DelaySchedule(std::move(rows));
        } catch (const InvalidArgument& e) {
            throw ConfigError(breakpoints_.front().line, "breakpoint", e.what());
        }
    }

    RunConfig finish(std::size_t end_line) {
        const bool has_inline = inline_line_.has_value();
        if (config_.scenario && has_inline) {
            throw ConfigError(*inline_line_, "scenario",
                              "a preset scenario cannot be combined with an inline definition");
        }
        if (!config_.scenario && !has_inline) {
            throw ConfigError(end_line, "scenario", "missing: give a preset name or an inline definition");
        }
        if (section_lines_.count("expect") && !has_inline) {
            throw ConfigError(section_lines_.at("expect"), "expect", "only applies to inline definitions");
        }
        if (has_inline) {
            if (!horizon_) throw ConfigError(end_line, "horizon", "missing required key");
            config_.inline_run = InlineRun{build_pulse(end_line), build_schedule(end_line), *horizon_, expect_};
        }
        return config_;
    }
};

void write_expectations(std::ostream& os, const InlineExpectations& e) {
    if (e == InlineExpectations{}) return;
    os << "\n[expect]\n";
    if (e.velocity) os << "velocity = " << format(*e.velocity) << '\n';
    os << "velocity_tolerance = " << format(e.velocity_tolerance) << '\n';
    if (e.width) os << "width = " << format(*e.width) << '\n';
    os << "width_tolerance = " << format(e.width_tolerance) << '\n';
    if (e.max_distortion) os << "max_distortion = " << format(*e.max_distortion) << '\n';
    if (e.min_distortion) os << "min_distortion = " << format(*e.min_distortion) << '\n';
}

}  // namespace

double parse_seconds(std::string_view text) {
    text = trim(text);
    double scale = 1.0;
    if (text.ends_with("ms")) {
        scale = 1e-3;
        text.remove_suffix(2);
    } else if (text.ends_with("us")) {
        scale = 1e-6;
        text.remove_suffix(2);
    } else if (text.ends_with("s")) {
        text.remove_suffix(1);
    }
    return parse_number(text) * scale;
}

EmitFlags parse_emit(std::string_view list) {
    EmitFlags flags{false, false, false, false};
    for (auto item : split_list(list)) {
        if (item == "waveforms") flags.waveforms = true;
        else if (item == "metrics") flags.metrics = true;
        else if (item == "spectra") flags.spectra = true;
        else if (item == "oracle") flags.oracle = true;
        else throw InvalidArgument("unknown emit target '" + std::string(item) +
                                   "'; expected waveforms, metrics, spectra or oracle");
    }
    return flags;
}

RunConfig parse_config(std::string_view text) { return Parser{}.parse(text); }

std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    if (c.scenario) os << "scenario = \"" << *c.scenario << "\"\n";
    os << "dt = " << format(c.dt) << '\n';
    if (!c.output_dir.empty()) os << "output_dir = \"" << c.output_dir << "\"\n";
    std::string emit;
    auto add = [&](bool on, const char* name) {
        if (!on) return;
        if (!emit.empty()) emit += ',';
        emit += name;
    };
    add(c.emit.waveforms, "waveforms");
    add(c.emit.metrics, "metrics");
    add(c.emit.spectra, "spectra");
    add(c.emit.oracle, "oracle");
    os << "emit = \"" << emit << "\"\n";
    os << "decimate = " << c.decimate << '\n';
    if (!c.inline_run) return os.str();

    const auto& r = *c.inline_run;
    os << "horizon = " << format(r.horizon) << '\n';
    os << "\n[pulse]\n";
    if (r.pulse.kind() == PulseSpec::Kind::gaussian) {
        os << "shape = gaussian\n"
           << "amplitude = " << format(r.pulse.amplitude()) << '\n'
           << "center = " << format(r.pulse.center()) << '\n'
           << "width = " << format(r.pulse.width()) << '\n'
           << "start = " << format(r.pulse.t_lo()) << '\n'
           << "end = " << format(r.pulse.t_hi()) << '\n';
    } else {
        os << "shape = samples\n"
           << "t0 = " << format(r.pulse.t_lo()) << '\n'
           << "step = " << format(r.pulse.sample_step()) << '\n'
           << "samples = ";
        const auto s = r.pulse.samples();
        for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << format(s[i]);
        os << '\n';
    }
    os << "\n[schedule]\nstages = " << r.schedule.stage_count() << '\n';
    for (const auto& bp : r.schedule.breakpoints()) {
        os << "\n[breakpoint]\nt = " << format(bp.time) << '\n';
        // Runs of equal delay become one range line.
        std::size_t i = 0;
        while (i < bp.delays.size()) {
            std::size_t j = i;
            while (j + 1 < bp.delays.size() && bp.delays[j + 1] == bp.delays[i]) ++j;
            if (i == 0 && j + 1 == bp.delays.size()) {
                os << "T = " << format(bp.delays[i]) << '\n';
            } else {
                os << "T[" << i << ".." << j << "] = " << format(bp.delays[i]) << '\n';
            }
            i = j + 1;
        }
    }
    write_expectations(os, r.expected);
    return os.str();
}

Scenario resolve(const RunConfig& config) {
    if (config.scenario && config.inline_run) {
        throw InvalidArgument("config names a preset and an inline definition");
    }
    if (config.scenario) return preset(*config.scenario);
    if (!config.inline_run) throw InvalidArgument("config has neither a preset nor an inline definition");
    const auto& r = *config.inline_run;
    Scenario s{"custom", r.pulse, r.schedule, r.horizon, {}};
    const std::size_t n = r.schedule.stage_count();
    const auto& e = r.expected;
    if (e.velocity) s.expected.velocity = VelocityExpectation{*e.velocity, e.velocity_tolerance, 0, n};
    if (e.width) s.expected.temporal_width = WidthExpectation{*e.width, e.width_tolerance, 0, n};
    if (e.max_distortion) {
        s.expected.distortion.push_back({0, n, *e.max_distortion, DistortionBound::Kind::below});
    }
    if (e.min_distortion) {
        s.expected.distortion.push_back({n, n, *e.min_distortion, DistortionBound::Kind::above});
    }
    return s;
}

}  // namespace slowlight::cli
