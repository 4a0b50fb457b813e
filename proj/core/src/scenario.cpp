// Copyright 2026 The Blockade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "blockade/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "blockade/errors.hpp"
#include "blockade/units.hpp"

namespace blockade {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

/// Reads one JSON object, remembering which keys were used so leftovers can be rejected.
class Reader {
 public:
    Reader(const json &node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) {
            fail("expected an object");
        }
    }

    [[noreturn]] void fail(const std::string &what) const {
        throw ValidationError((path_.empty() ? std::string("scenario") : path_) + ": " + what);
    }
    std::string key_path(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

    bool has(const std::string &key) const { return node_.contains(key); }

    const json *get(const std::string &key) {
        auto it = node_.find(key);
        if (it == node_.end()) {
            return nullptr;
        }
        used_.insert(key);
        return &*it;
    }

    const json &require(const std::string &key) {
        const json *v = get(key);
        if (!v) {
            fail("missing required key '" + key + "'");
        }
        return *v;
    }

    double number(const std::string &key, double fallback) {
        const json *v = get(key);
        return v ? as_number(*v, key_path(key)) : fallback;
    }
    int integer(const std::string &key, int fallback) {
        const json *v = get(key);
        return v ? as_integer(*v, key_path(key)) : fallback;
    }
    bool boolean(const std::string &key, bool fallback) {
        const json *v = get(key);
        if (!v) {
            return fallback;
        }
        if (!v->is_boolean()) {
            throw ValidationError(key_path(key) + ": expected true or false");
        }
        return v->get<bool>();
    }
    std::string text(const std::string &key, const std::string &fallback) {
        const json *v = get(key);
        if (!v) {
            return fallback;
        }
        if (!v->is_string()) {
            throw ValidationError(key_path(key) + ": expected a string");
        }
        return v->get<std::string>();
    }
    std::optional<Window> window(const std::string &key) {
        const json *v = get(key);
        if (!v) {
            return std::nullopt;
        }
        return as_window(*v, key_path(key));
    }

    void finish() const {
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            if (!used_.count(it.key())) {
                throw ValidationError(key_path(it.key()) + ": unknown key");
            }
        }
    }

    static double as_number(const json &v, const std::string &path) {
        if (!v.is_number()) {
            throw ValidationError(path + ": expected a number");
        }
        const double x = v.get<double>();
        if (!std::isfinite(x)) {
            throw ValidationError(path + ": must be finite");
        }
        return x;
    }
    static int as_integer(const json &v, const std::string &path) {
        if (!v.is_number_integer()) {
            throw ValidationError(path + ": expected an integer");
        }
        return v.get<int>();
    }
    static Window as_window(const json &v, const std::string &path) {
        if (!v.is_array() || v.size() != 2) {
            throw ValidationError(path + ": expected [start, end]");
        }
        Window w{as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]")};
        if (!(w.end > w.start)) {
            throw ValidationError(path + ": end must exceed start");
        }
        return w;
    }

 private:
    const json &node_;
    std::string path_;
    std::set<std::string> used_;
};

template <class Enum, std::size_t K>
Enum enum_from(const std::string &text, const std::pair<Enum, std::string_view> (&table)[K], const std::string &path) {
    std::string options;
    for (const auto &[value, name] : table) {
        if (name == text) {
            return value;
        }
        options += (options.empty() ? "" : ", ") + std::string(name);
    }
    throw ValidationError(path + ": unknown value '" + text + "' (expected " + options + ")");
}

constexpr std::pair<ScenarioKind, std::string_view> kKinds[] = {
    {ScenarioKind::simulate, "simulate"},       {ScenarioKind::protocol, "protocol"},
    {ScenarioKind::truth_table, "truth-table"}, {ScenarioKind::sweep, "sweep"},
    {ScenarioKind::poisson, "poisson"},
};
constexpr std::pair<Observable, std::string_view> kObservables[] = {
    {Observable::p_single, "p_single"},
    {Observable::ground_phase, "ground_phase"},
    {Observable::populations, "populations"},
};
constexpr std::pair<SweepAxis, std::string_view> kAxes[] = {
    {SweepAxis::rabi_ratio, "rabi_ratio"},
    {SweepAxis::phi, "phi"},
};

template <class Enum, std::size_t K>
std::string_view enum_name(Enum value, const std::pair<Enum, std::string_view> (&table)[K]) {
    for (const auto &[v, name] : table) {
        if (v == value) {
            return name;
        }
    }
    return "unknown";
}

ArpParams read_arp(Reader r) {
    ArpParams a;
    a.omega = Frequency::from_mhz(r.number("omega_mhz", a.omega.mhz()));
    a.chirp_hz_per_s = r.number("chirp_hz_per_s", a.chirp_hz_per_s);
    a.tau = r.number("tau_us", a.tau);
    a.center = r.number("center_us", a.center);
    a.phase = r.number("phase_rad", a.phase);
    a.constant_envelope = r.boolean("constant_envelope", a.constant_envelope);
    a.window = r.window("window_us");
    r.finish();
    return a;
}

StirapParams read_stirap(Reader r) {
    StirapParams s;
    s.omega1 = Frequency::from_mhz(r.number("omega1_mhz", s.omega1.mhz()));
    s.omega2 = Frequency::from_mhz(r.number("omega2_mhz", s.omega2.mhz()));
    s.t1 = r.number("t1_us", s.t1);
    s.t2 = r.number("t2_us", s.t2);
    s.tau = r.number("tau_us", s.tau);
    s.delta = Frequency::from_mhz(r.number("delta_mhz", s.delta.mhz()));
    s.pivot = r.number("pivot_us", s.pivot);
    s.window = r.window("window_us");
    r.finish();
    return s;
}

ProtocolSpec read_protocol(Reader r) {
    ProtocolSpec spec;
    spec.name = protocol_from_string(r.text("name", ""));
    auto &p = spec.params;
    if (const json *v = r.get("params")) {
        Reader q(*v, r.key_path("params"));
        if (const json *a = q.get("arp")) {
            p.arp = read_arp(Reader(*a, q.key_path("arp")));
        }
        if (const json *s = q.get("stirap")) {
            p.stirap = read_stirap(Reader(*s, q.key_path("stirap")));
        }
        p.theta = q.number("theta_rad", p.theta);
        p.phi = q.number("phi_rad", p.phi);
        p.omega_pi = Frequency::from_mhz(q.number("omega_pi_mhz", p.omega_pi.mhz()));
        p.omega_mw = Frequency::from_mhz(q.number("omega_mw_mhz", p.omega_mw.mhz()));
        p.guard = q.number("guard_us", p.guard);
        p.sign_switch = q.boolean("sign_switch", p.sign_switch);
        p.phase_flip = q.boolean("phase_flip", p.phase_flip);
        p.mirrored = q.boolean("mirrored", p.mirrored);
        p.rabi_ratio = q.number("rabi_ratio", p.rabi_ratio);
        p.sequential_microwave = q.boolean("sequential_microwave", p.sequential_microwave);
        p.excitation = passage_from_string(q.text("excitation", std::string(to_string(p.excitation))));
        p.reference_n = q.integer("reference_n", p.reference_n);
        p.omega_reference = Frequency::from_mhz(q.number("omega_reference_mhz", p.omega_reference.mhz()));
        if (const json *a = q.get("area_rad")) {
            p.area = Reader::as_number(*a, q.key_path("area_rad"));
        }
        q.finish();
    }
    r.finish();
    return spec;
}

SegmentSpec read_segment(Reader r) {
    SegmentSpec s;
    {
        Reader t(r.require("transition"), r.key_path("transition"));
        s.transition.ensemble = t.integer("ensemble", 0);
        s.transition.from = level_from_string(t.text("from", ""));
        s.transition.to = level_from_string(t.text("to", ""));
        t.finish();
    }
    {
        Reader e(r.require("envelope"), r.key_path("envelope"));
        s.envelope = e.text("kind", s.envelope);
        s.omega_mhz = e.number("omega_mhz", s.omega_mhz);
        s.center_us = e.number("center_us", s.center_us);
        s.tau_us = e.number("tau_us", s.tau_us);
        e.finish();
    }
    if (const json *v = r.get("detuning")) {
        Reader d(*v, r.key_path("detuning"));
        s.detuning = d.text("kind", s.detuning);
        s.delta_mhz = d.number("delta_mhz", s.delta_mhz);
        s.chirp_hz_per_s = d.number("chirp_hz_per_s", s.chirp_hz_per_s);
        s.origin_us = d.number("origin_us", s.origin_us);
        s.switch_us = d.number("switch_us", s.switch_us);
        d.finish();
    }
    s.phase_rad = r.number("phase_rad", s.phase_rad);
    s.window = Reader::as_window(r.require("window_us"), r.key_path("window_us"));
    s.label = r.text("label", "");
    r.finish();
    return s;
}

ScheduleSpec read_schedule(Reader r) {
    ScheduleSpec s;
    const json &levels = r.require("levels");
    if (!levels.is_array() || levels.empty()) {
        r.fail("levels must be a non-empty list");
    }
    for (const auto &l : levels) {
        if (!l.is_string()) {
            r.fail("levels entries must be strings");
        }
        s.levels.push_back(level_from_string(l.get<std::string>()));
    }
    s.cross_blockade = r.boolean("cross_blockade", true);
    s.window = Reader::as_window(r.require("window_us"), r.key_path("window_us"));
    const json &segs = r.require("segments");
    if (!segs.is_array()) {
        r.fail("segments must be a list");
    }
    for (std::size_t i = 0; i < segs.size(); ++i) {
        s.segments.push_back(read_segment(Reader(segs[i], r.key_path("segments[" + std::to_string(i) + "]"))));
    }
    r.finish();
    return s;
}

std::vector<int> read_int_list(const json &v, const std::string &path) {
    if (!v.is_array()) {
        throw ValidationError(path + ": expected a list of integers");
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(Reader::as_integer(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<double> read_number_list(const json &v, const std::string &path) {
    if (!v.is_array()) {
        throw ValidationError(path + ": expected a list of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(Reader::as_number(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

/// Which top-level keys each kind accepts besides the common ones.
std::set<std::string> keys_for(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::simulate: return {"protocol", "schedule", "n_values"};
        case ScenarioKind::protocol: return {"protocol", "n_atoms", "input"};
        case ScenarioKind::truth_table: return {"protocol", "n_atoms"};
        case ScenarioKind::sweep: return {"protocol", "axis", "grid", "n_values"};
        case ScenarioKind::poisson: return {"nbar", "n_max", "compare"};
    }
    return {};
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

// Serialization helpers.

ojson window_json(const Window &w) { return ojson::array({w.start, w.end}); }

ojson arp_json(const ArpParams &a) {
    ojson j;
    j["omega_mhz"] = a.omega.mhz();
    j["chirp_hz_per_s"] = a.chirp_hz_per_s;
    j["tau_us"] = a.tau;
    j["center_us"] = a.center;
    j["phase_rad"] = a.phase;
    j["constant_envelope"] = a.constant_envelope;
    if (a.window) {
        j["window_us"] = window_json(*a.window);
    }
    return j;
}

ojson stirap_json(const StirapParams &s) {
    ojson j;
    j["omega1_mhz"] = s.omega1.mhz();
    j["omega2_mhz"] = s.omega2.mhz();
    j["t1_us"] = s.t1;
    j["t2_us"] = s.t2;
    j["tau_us"] = s.tau;
    j["delta_mhz"] = s.delta.mhz();
    j["pivot_us"] = s.pivot;
    if (s.window) {
        j["window_us"] = window_json(*s.window);
    }
    return j;
}

ojson protocol_json(const ProtocolSpec &spec) {
    const auto &p = spec.params;
    ojson params;
    params["arp"] = arp_json(p.arp);
    params["stirap"] = stirap_json(p.stirap);
    params["theta_rad"] = p.theta;
    params["phi_rad"] = p.phi;
    params["omega_pi_mhz"] = p.omega_pi.mhz();
    params["omega_mw_mhz"] = p.omega_mw.mhz();
    params["guard_us"] = p.guard;
    params["sign_switch"] = p.sign_switch;
    params["phase_flip"] = p.phase_flip;
    params["mirrored"] = p.mirrored;
    params["rabi_ratio"] = p.rabi_ratio;
    params["sequential_microwave"] = p.sequential_microwave;
    params["excitation"] = std::string(to_string(p.excitation));
    params["reference_n"] = p.reference_n;
    params["omega_reference_mhz"] = p.omega_reference.mhz();
    if (p.area) {
        params["area_rad"] = *p.area;
    }
    ojson j;
    j["name"] = std::string(to_string(spec.name));
    j["params"] = std::move(params);
    return j;
}

ojson segment_json(const SegmentSpec &s) {
    ojson j;
    j["transition"] = ojson{{"ensemble", s.transition.ensemble},
                            {"from", std::string(to_string(s.transition.from))},
                            {"to", std::string(to_string(s.transition.to))}};
    j["envelope"] =
        ojson{{"kind", s.envelope}, {"omega_mhz", s.omega_mhz}, {"center_us", s.center_us}, {"tau_us", s.tau_us}};
    j["detuning"] = ojson{{"kind", s.detuning},
                          {"delta_mhz", s.delta_mhz},
                          {"chirp_hz_per_s", s.chirp_hz_per_s},
                          {"origin_us", s.origin_us},
                          {"switch_us", s.switch_us}};
    j["phase_rad"] = s.phase_rad;
    j["window_us"] = window_json(s.window);
    j["label"] = s.label;
    return j;
}

ojson schedule_json(const ScheduleSpec &s) {
    ojson j;
    ojson levels = ojson::array();
    for (Level l : s.levels) {
        levels.push_back(std::string(to_string(l)));
    }
    j["levels"] = std::move(levels);
    j["cross_blockade"] = s.cross_blockade;
    j["window_us"] = window_json(s.window);
    ojson segs = ojson::array();
    for (const auto &seg : s.segments) {
        segs.push_back(segment_json(seg));
    }
    j["segments"] = std::move(segs);
    return j;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) { return enum_name(kind, kKinds); }
std::string_view to_string(Observable observable) { return enum_name(observable, kObservables); }
std::string_view to_string(SweepAxis axis) { return enum_name(axis, kAxes); }

PulseSegment SegmentSpec::to_segment() const {
    PulseSegment seg;
    seg.transition = transition;
    const double omega = mhz_to_rad_per_us(omega_mhz);
    if (envelope == "gaussian") {
        seg.envelope = Envelope::gaussian(omega, center_us, tau_us);
    } else if (envelope == "constant") {
        seg.envelope = Envelope::constant(omega);
    } else if (envelope == "zero") {
        seg.envelope = Envelope::zero();
    } else {
        throw ValidationError("envelope.kind: unknown value '" + envelope + "' (expected gaussian, constant, zero)");
    }
    if (detuning == "constant") {
        seg.detuning = DetuningLaw::constant(mhz_to_rad_per_us(delta_mhz));
    } else if (detuning == "linear_chirp") {
        seg.detuning = DetuningLaw::linear_chirp(chirp_rad_per_us2(chirp_hz_per_s), origin_us);
    } else if (detuning == "sign_switch") {
        seg.detuning = DetuningLaw::sign_switch(mhz_to_rad_per_us(delta_mhz), switch_us);
    } else {
        throw ValidationError("detuning.kind: unknown value '" + detuning +
                              "' (expected constant, linear_chirp, sign_switch)");
    }
    seg.carrier_phase = phase_rad;
    seg.window = window;
    seg.label = label;
    return seg;
}

PulseSchedule ScheduleSpec::to_schedule() const {
    std::vector<PulseSegment> segs;
    segs.reserve(segments.size());
    for (const auto &s : segments) {
        segs.push_back(s.to_segment());
    }
    return PulseSchedule(std::move(segs), window);
}

void Scenario::validate() const {
    auto bad = [](const std::string &key, const std::string &what) { throw ValidationError(key + ": " + what); };
    if (name.empty()) {
        bad("name", "must not be empty");
    }
    for (char c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) {
            bad("name", "only letters, digits, '_' and '-' are allowed");
        }
    }
    if (!(integrator.rtol > 0.0) || !(integrator.atol > 0.0) || !(integrator.max_step > 0.0)) {
        bad("integrator", "rtol, atol and max_step_us must be positive");
    }
    if (integrator.norm_rate < 0.0) {
        bad("integrator.norm_rate", "must be >= 0");
    }
    if (!(output.sample_dt_us > 0.0)) {
        bad("output.sample_dt_us", "must be positive");
    }
    if (protocol && schedule) {
        bad("protocol", "'protocol' and 'schedule' are mutually exclusive");
    }

    auto check_protocol = [&](const std::vector<int> &counts) {
        ProtocolSpec spec = *protocol;
        spec.n_atoms = counts;
        spec.validate();
    };

    switch (kind) {
        case ScenarioKind::simulate:
            if (!protocol && !schedule) {
                bad("simulate", "needs either 'protocol' or 'schedule'");
            }
            if (n_values.empty()) {
                bad("n_values", "must list at least one atom count");
            }
            for (const auto &n : n_values) {
                if (protocol) {
                    if (is_two_qubit(protocol->name)) {
                        bad("protocol.name", "two-qubit gates run as kind 'truth-table' or 'protocol'");
                    }
                    check_protocol(n);
                } else {
                    if (n.empty() || n.size() > 2) {
                        bad("n_values", "each entry needs one count per ensemble (1 or 2 ensembles)");
                    }
                    for (int x : n) {
                        if (x < 1) {
                            bad("n_values", "atom counts must be >= 1");
                        }
                    }
                    for (const auto &seg : schedule->segments) {
                        if (seg.transition.ensemble < 0 ||
                            static_cast<std::size_t>(seg.transition.ensemble) >= n.size()) {
                            bad("schedule.segments", "transition ensemble out of range for n_values entry");
                        }
                    }
                }
            }
            if (schedule) {
                LevelScheme scheme(schedule->levels);
                (void)scheme;
                (void)schedule->to_schedule();
                for (const auto &seg : schedule->segments) {
                    if (!scheme.contains(seg.transition.from) || !scheme.contains(seg.transition.to)) {
                        bad("schedule.segments", "level absent from schedule.levels in " + to_string(seg.transition));
                    }
                    if (seg.transition.from == seg.transition.to) {
                        bad("schedule.segments", "transition needs two distinct levels");
                    }
                    if (seg.omega_mhz < 0.0) {
                        bad("schedule.segments.envelope.omega_mhz", "must be >= 0");
                    }
                    if (!(seg.tau_us > 0.0)) {
                        bad("schedule.segments.envelope.tau_us", "must be positive");
                    }
                }
            }
            break;
        case ScenarioKind::protocol:
        case ScenarioKind::truth_table: {
            if (!protocol) {
                bad("protocol", "required for kind '" + std::string(to_string(kind)) + "'");
            }
            if (!is_gate(protocol->name)) {
                bad("protocol.name", "'" + std::string(to_string(protocol->name)) + "' is not a gate protocol");
            }
            check_protocol(n_atoms);
            if (kind == ScenarioKind::protocol && !input.empty()) {
                const std::size_t want = std::size_t{1} << n_atoms.size();
                if (input.size() != want) {
                    bad("input", "needs " + std::to_string(want) + " [re, im] amplitudes");
                }
                double norm = 0.0;
                for (const auto &[re, im] : input) {
                    norm += re * re + im * im;
                }
                if (std::abs(norm - 1.0) > 1e-9) {
                    bad("input", "amplitudes must be normalized");
                }
            }
            break;
        }
        case ScenarioKind::sweep:
            if (!protocol) {
                bad("protocol", "required for kind 'sweep'");
            }
            if (axis == SweepAxis::rabi_ratio && protocol->name != ProtocolName::double_arp &&
                protocol->name != ProtocolName::double_stirap) {
                bad("axis", "rabi_ratio sweeps need protocol double_arp or double_stirap");
            }
            if (axis == SweepAxis::phi && protocol->name != ProtocolName::mw_single_qubit) {
                bad("axis", "phi sweeps need protocol mw_single_qubit");
            }
            if (grid.empty()) {
                bad("grid", "must not be empty");
            }
            for (std::size_t i = 0; i < grid.size(); ++i) {
                if (i > 0 && !(grid[i] > grid[i - 1])) {
                    bad("grid", "must be strictly increasing");
                }
                if (axis == SweepAxis::rabi_ratio && !(grid[i] > 0.0 && grid[i] <= 2.0)) {
                    bad("grid", "ratios must lie in (0, 2]");
                }
            }
            if (n_values.empty()) {
                bad("n_values", "must list at least one atom count");
            }
            for (const auto &n : n_values) {
                if (n.size() != 1) {
                    bad("n_values", "sweeps take a single atom count per entry");
                }
                check_protocol(n);
            }
            break;
        case ScenarioKind::poisson:
            if (!(nbar > 0.0)) {
                bad("nbar", "must be positive");
            }
            if (n_max < 1 || n_max > 40) {
                bad("n_max", "must lie in [1, 40]");
            }
            for (const auto &spec : compare) {
                switch (spec.name) {
                    case ProtocolName::load_single_atom:
                    case ProtocolName::pi_pulse_reference:
                    case ProtocolName::arp_single:
                    case ProtocolName::stirap_single: {
                        ProtocolSpec one = spec;
                        one.n_atoms = {1};
                        one.validate();
                        break;
                    }
                    default:
                        bad("compare", "'" + std::string(to_string(spec.name)) +
                                           "' is not a single-atom excitation protocol");
                }
            }
            break;
    }
}

Scenario parse_scenario_text(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        std::string what = e.what();
        // Drop nlohmann's "[json.exception.parse_error.101] " prefix.
        if (auto pos = what.find("] "); pos != std::string::npos) {
            what = what.substr(pos + 2);
        }
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what, line,
                         column);
    }

    Reader r(root, "");
    Scenario s;
    s.name = r.text("name", "");
    s.description = r.text("description", "");
    s.kind = enum_from(r.text("kind", ""), kKinds, "kind");

    const auto allowed = keys_for(s.kind);
    static const std::set<std::string> common = {"name", "description", "kind", "integrator", "output"};
    for (auto it = root.begin(); it != root.end(); ++it) {
        if (!common.count(it.key()) && !allowed.count(it.key())) {
            static const std::set<std::string> known = {"protocol", "schedule", "n_values", "n_atoms", "input", "axis",
                                                        "grid",     "nbar",     "n_max",    "compare"};
            if (known.count(it.key())) {
                throw ValidationError(it.key() + ": not used by kind '" + std::string(to_string(s.kind)) + "'");
            }
            throw ValidationError(it.key() + ": unknown key");
        }
    }
    if (root.contains("protocol") && root.contains("schedule")) {
        throw ValidationError("protocol: 'protocol' and 'schedule' are mutually exclusive");
    }

    if (const json *v = r.get("protocol")) {
        s.protocol = read_protocol(Reader(*v, "protocol"));
    }
    if (const json *v = r.get("schedule")) {
        s.schedule = read_schedule(Reader(*v, "schedule"));
    }
    if (const json *v = r.get("n_values")) {
        if (!v->is_array()) {
            throw ValidationError("n_values: expected a list");
        }
        for (std::size_t i = 0; i < v->size(); ++i) {
            const auto &entry = (*v)[i];
            const std::string path = "n_values[" + std::to_string(i) + "]";
            s.n_values.push_back(entry.is_array() ? read_int_list(entry, path)
                                                  : std::vector<int>{Reader::as_integer(entry, path)});
        }
    }
    if (const json *v = r.get("n_atoms")) {
        s.n_atoms = read_int_list(*v, "n_atoms");
    }
    if (const json *v = r.get("input")) {
        if (!v->is_array()) {
            throw ValidationError("input: expected a list of [re, im] pairs");
        }
        for (std::size_t i = 0; i < v->size(); ++i) {
            const auto pair = read_number_list((*v)[i], "input[" + std::to_string(i) + "]");
            if (pair.size() != 2) {
                throw ValidationError("input[" + std::to_string(i) + "]: expected [re, im]");
            }
            s.input.emplace_back(pair[0], pair[1]);
        }
    }
    if (r.has("axis")) {
        s.axis = enum_from(r.text("axis", ""), kAxes, "axis");
    }
    if (const json *v = r.get("grid")) {
        s.grid = read_number_list(*v, "grid");
    }
    s.nbar = r.number("nbar", s.nbar);
    s.n_max = r.integer("n_max", s.n_max);
    if (const json *v = r.get("compare")) {
        if (!v->is_array()) {
            throw ValidationError("compare: expected a list of protocols");
        }
        for (std::size_t i = 0; i < v->size(); ++i) {
            s.compare.push_back(read_protocol(Reader((*v)[i], "compare[" + std::to_string(i) + "]")));
        }
    }
    if (const json *v = r.get("integrator")) {
        Reader q(*v, "integrator");
        s.integrator.rtol = q.number("rtol", s.integrator.rtol);
        s.integrator.atol = q.number("atol", s.integrator.atol);
        s.integrator.max_step = q.number("max_step_us", s.integrator.max_step);
        s.integrator.norm_rate = q.number("norm_rate", s.integrator.norm_rate);
        q.finish();
    }
    if (const json *v = r.get("output")) {
        Reader q(*v, "output");
        s.output.sample_dt_us = q.number("sample_dt_us", s.output.sample_dt_us);
        if (q.has("observable")) {
            s.output.observable = enum_from(q.text("observable", ""), kObservables, "output.observable");
        }
        s.output.plot = q.boolean("plot", s.output.plot);
        q.finish();
    }
    r.finish();
    s.validate();
    return s;
}

Scenario parse_scenario(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open scenario file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

std::string serialize_scenario(const Scenario &s) {
    ojson j;
    j["name"] = s.name;
    j["description"] = s.description;
    j["kind"] = std::string(to_string(s.kind));
    if (s.protocol) {
        j["protocol"] = protocol_json(*s.protocol);
    }
    if (s.schedule) {
        j["schedule"] = schedule_json(*s.schedule);
    }
    auto n_values_json = [&] {
        ojson a = ojson::array();
        for (const auto &n : s.n_values) {
            a.push_back(n.size() == 1 ? ojson(n[0]) : ojson(n));
        }
        return a;
    };
    switch (s.kind) {
        case ScenarioKind::simulate: j["n_values"] = n_values_json(); break;
        case ScenarioKind::protocol: {
            j["n_atoms"] = s.n_atoms;
            ojson in = ojson::array();
            for (const auto &[re, im] : s.input) {
                in.push_back(ojson::array({re, im}));
            }
            j["input"] = std::move(in);
            break;
        }
        case ScenarioKind::truth_table: j["n_atoms"] = s.n_atoms; break;
        case ScenarioKind::sweep:
            j["axis"] = std::string(to_string(s.axis));
            j["grid"] = s.grid;
            j["n_values"] = n_values_json();
            break;
        case ScenarioKind::poisson: {
            j["nbar"] = s.nbar;
            j["n_max"] = s.n_max;
            ojson cmp = ojson::array();
            for (const auto &spec : s.compare) {
                cmp.push_back(protocol_json(spec));
            }
            j["compare"] = std::move(cmp);
            break;
        }
    }
    j["integrator"] = ojson{{"rtol", s.integrator.rtol},
                            {"atol", s.integrator.atol},
                            {"max_step_us", s.integrator.max_step},
                            {"norm_rate", s.integrator.norm_rate}};
    j["output"] = ojson{{"sample_dt_us", s.output.sample_dt_us},
                        {"observable", std::string(to_string(s.output.observable))},
                        {"plot", s.output.plot}};
    return j.dump(2) + "\n";
}

}  // namespace blockade
