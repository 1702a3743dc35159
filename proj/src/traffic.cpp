#include "podreliab/traffic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <sstream>

#include "podreliab/errors.hpp"
#include "podreliab/text.hpp"

namespace podreliab {

std::string to_string(InteractionKind kind) {
    switch (kind) {
        case InteractionKind::Encounter: return "encounter";
        case InteractionKind::Overtaking: return "overtaking";
        case InteractionKind::Overtaken: return "overtaken";
    }
    return "unknown";
}

std::string to_string(CoarseGroup group) {
    switch (group) {
        case CoarseGroup::NoInteraction: return "no-interaction";
        case CoarseGroup::Encounter: return "Encounter";
        case CoarseGroup::Overtaking: return "Overtaking";
        case CoarseGroup::Overtaken: return "Overtaken";
    }
    return "unknown";
}

double along_river_position(Vec2 position, Vec2 river_axis) { return dot(position, river_axis); }

double along_river_position(const TrackPoint& point, Vec2 river_axis) {
    return along_river_position(point.position(), river_axis);
}

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

std::vector<InteractionEvent> detect_interactions(const SequenceSample& sample, Vec2 river_axis,
                                                  const InteractionOptions& options) {
    std::vector<InteractionEvent> events;
    const auto& ego = sample.ego.points;
    if (ego.size() < 2 || sample.input_length == 0 || sample.input_length > ego.size()) {
        return events;
    }
    const std::size_t first = sample.input_length - 1;  // last observed position
    const double w0 = static_cast<double>(ego.front().timestamp);
    const double w1 = static_cast<double>(ego.back().timestamp);

    const double ego_net = along_river_position(ego.back(), river_axis) -
                           along_river_position(ego.front(), river_axis);
    const int ego_dir = ego_net < 0.0 ? -1 : 1;
    const Vec2 lateral_axis = perpendicular(river_axis);

    for (const auto& nb : sample.neighbors) {
        if (nb.empty()) continue;

        // Direction over the part of the window the neighbor covers.
        const double c0 = std::max(w0, static_cast<double>(nb.start_time()));
        const double c1 = std::min(w1, static_cast<double>(nb.end_time()));
        if (c1 < c0) continue;
        const double nb_net = along_river_position(*position_at(nb, c1), river_axis) -
                              along_river_position(*position_at(nb, c0), river_axis);
        const bool directionless = std::fabs(nb_net) < options.stationary_threshold_m;
        const bool opposite = !directionless && sign_of(nb_net) != ego_dir;

        int prev_sign = 0;
        std::optional<std::size_t> first_zero;
        for (std::size_t k = first; k < ego.size(); ++k) {
            const auto nb_pos = position_at(nb, static_cast<double>(ego[k].timestamp));
            if (!nb_pos) continue;
            const double gap = ego_dir * (along_river_position(ego[k], river_axis) -
                                          along_river_position(*nb_pos, river_axis));
            const int s = sign_of(gap);
            if (s == 0) {
                if (prev_sign != 0 && !first_zero) first_zero = k;
                continue;
            }
            if (prev_sign == 0 || s == prev_sign) {
                prev_sign = s;
                first_zero.reset();
                continue;
            }
            const std::size_t at = first_zero.value_or(k);
            if (options.lateral_gate_m) {
                const auto p = position_at(nb, static_cast<double>(ego[at].timestamp));
                const double lateral = std::fabs(dot(ego[at].position() - *p, lateral_axis));
                if (lateral > *options.lateral_gate_m) break;
            }
            InteractionEvent ev;
            ev.neighbor_id = nb.vessel_id;
            ev.event_time = ego[at].timestamp;
            if (directionless || opposite) {
                ev.kind = InteractionKind::Encounter;
            } else {
                ev.kind = s > 0 ? InteractionKind::Overtaking : InteractionKind::Overtaken;
            }
            events.push_back(std::move(ev));
            break;
        }
    }
    std::sort(events.begin(), events.end(), [](const InteractionEvent& a, const InteractionEvent& b) {
        if (a.event_time != b.event_time) return a.event_time < b.event_time;
        if (a.neighbor_id != b.neighbor_id) return a.neighbor_id < b.neighbor_id;
        return a.kind < b.kind;
    });
    return events;
}

TrafficSituationLabel classify_sample(const std::vector<InteractionEvent>& events) {
    TrafficSituationLabel label;
    for (const auto& e : events) {
        switch (e.kind) {
            case InteractionKind::Encounter: ++label.encounter; break;
            case InteractionKind::Overtaking: ++label.overtaking; break;
            case InteractionKind::Overtaken: ++label.overtaken; break;
        }
    }
    return label;
}

std::string label_string(const TrafficSituationLabel& label) {
    if (label.empty()) return "no-interaction";
    std::string out;
    auto add = [&out](const char* name, int count) {
        if (count == 0) return;
        if (!out.empty()) out += ' ';
        out += name;
        out += '-';
        out += std::to_string(count);
    };
    add("encounter", label.encounter);
    add("overtaking", label.overtaking);
    add("overtaken", label.overtaken);
    return out;
}

std::optional<TrafficSituationLabel> parse_label(const std::string& text) {
    std::string lower;
    for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    const std::string trimmed(trim(lower));
    TrafficSituationLabel label;
    if (trimmed == "no-interaction") return label;
    std::istringstream words(trimmed);
    std::string word;
    bool any = false;
    while (words >> word) {
        const auto dash = word.rfind('-');
        if (dash == std::string::npos) return std::nullopt;
        const auto count = parse_int(word.substr(dash + 1));
        if (!count || *count <= 0) return std::nullopt;
        const std::string kind = word.substr(0, dash);
        int* slot = nullptr;
        if (kind == "encounter") slot = &label.encounter;
        else if (kind == "overtaking") slot = &label.overtaking;
        else if (kind == "overtaken") slot = &label.overtaken;
        if (slot == nullptr) return std::nullopt;
        *slot += static_cast<int>(*count);
        any = true;
    }
    if (!any) return std::nullopt;
    return label;
}

CoarseGroup coarse_group(const TrafficSituationLabel& label) {
    if (label.overtaken > 0) return CoarseGroup::Overtaken;
    if (label.overtaking > 0) return CoarseGroup::Overtaking;
    if (label.encounter > 0) return CoarseGroup::Encounter;
    return CoarseGroup::NoInteraction;
}

void write_label_csv(std::ostream& out, const std::vector<LabeledSample>& rows) {
    out << "sample_id,encounter,overtaking,overtaken,label,coarse_group\n";
    for (const auto& r : rows) {
        out << csv_escape(r.sample_id) << ',' << r.label.encounter << ',' << r.label.overtaking
            << ',' << r.label.overtaken << ',' << label_string(r.label) << ','
            << to_string(coarse_group(r.label)) << '\n';
    }
}

std::vector<LabeledSample> read_label_csv(std::istream& in) {
    std::vector<LabeledSample> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto f = split_csv_line(line);
        if (!header) {
            if (f.size() < 4 || trim(f[0]) != "sample_id") {
                throw ParseError(line_no, "expected label CSV header");
            }
            header = true;
            continue;
        }
        if (f.size() < 4) throw ParseError(line_no, "expected at least 4 fields");
        const auto e = parse_int(f[1]);
        const auto o = parse_int(f[2]);
        const auto t = parse_int(f[3]);
        if (!e || !o || !t || *e < 0 || *o < 0 || *t < 0) {
            throw ParseError(line_no, "interaction counts must be non-negative integers");
        }
        rows.push_back({std::string(trim(f[0])),
                        {static_cast<int>(*e), static_cast<int>(*o), static_cast<int>(*t)}});
    }
    if (!header) throw InputError("label file is empty");
    return rows;
}

}  // namespace podreliab
