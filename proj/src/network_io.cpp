#include <cmath>
#include <string>

#include "json.hpp"

#include "elastinet/error.hpp"
#include "elastinet/network.hpp"

namespace elastinet {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::Parse, path + ": " + what);
}

double read_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "non-finite number");
    return v;
}

Point2 read_point(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [x, y]");
    return {read_number(j[0], path + "/0"), read_number(j[1], path + "/1")};
}

const json& member(const json& j, const char* key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) fail(path + "/" + key, "missing");
    return *it;
}

json point_json(const Point2& p) { return json::array({p.x, p.y}); }

}  // namespace

std::string serialize(const Network& network, int indent) {
    json doc;
    doc["kind"] = to_string(network.kind);
    if (network.kind == NetworkKind::GeneralizedTheta) {
        doc["angles"] = json::array({network.angles[0], network.angles[1], network.angles[2]});
    }
    doc["curves"] = json::array();
    for (const auto& c : network.curves) {
        json pts = json::array();
        for (const auto& p : c.points) pts.push_back(point_json(p));
        doc["curves"].push_back({{"points", std::move(pts)}});
    }
    doc["junctions"] = json::array();
    for (const auto& jn : network.junctions) {
        json jj{{"position", point_json(jn.position)},
                {"frame_angle", jn.frame_angle},
                {"orientation", jn.orientation}};
        if (network.kind == NetworkKind::DegenerateTheta) jj["pairing"] = jn.pairing;
        doc["junctions"].push_back(std::move(jj));
    }
    return doc.dump(indent);
}

Network deserialize(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("/: ") + e.what());
    }
    if (!doc.is_object()) fail("", "document must be an object");

    Network net;
    const json& kind = member(doc, "kind", "");
    if (!kind.is_string()) fail("/kind", "expected a string");
    try {
        net.kind = network_kind_from_string(kind.get<std::string>());
    } catch (const Error& e) {
        fail("/kind", e.what());
    }

    if (net.kind == NetworkKind::GeneralizedTheta) {
        const json& a = member(doc, "angles", "");
        if (!a.is_array() || a.size() != 3) fail("/angles", "expected [a1, a2, a3]");
        for (std::size_t i = 0; i < 3; ++i) net.angles[i] = read_number(a[i], "/angles/" + std::to_string(i));
    }

    const json& curves = member(doc, "curves", "");
    if (!curves.is_array()) fail("/curves", "expected an array");
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const std::string path = "/curves/" + std::to_string(c);
        if (!curves[c].is_object()) fail(path, "expected an object");
        const json& pts = member(curves[c], "points", path);
        if (!pts.is_array()) fail(path + "/points", "expected an array");
        DiscreteCurve curve;
        curve.closed = net.kind == NetworkKind::Closed;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            curve.points.push_back(read_point(pts[i], path + "/points/" + std::to_string(i)));
        }
        net.curves.push_back(std::move(curve));
    }

    bool missing_frame = false;
    if (auto it = doc.find("junctions"); it != doc.end()) {
        if (!it->is_array()) fail("/junctions", "expected an array");
        for (std::size_t j = 0; j < it->size(); ++j) {
            const std::string path = "/junctions/" + std::to_string(j);
            const json& jj = (*it)[j];
            if (!jj.is_object()) fail(path, "expected an object");
            Junction jn;
            jn.position = read_point(member(jj, "position", path), path + "/position");
            if (auto f = jj.find("frame_angle"); f != jj.end()) {
                jn.frame_angle = read_number(*f, path + "/frame_angle");
            } else {
                missing_frame = true;
            }
            if (auto o = jj.find("orientation"); o != jj.end()) {
                if (!o->is_number_integer()) fail(path + "/orientation", "expected +1 or -1");
                jn.orientation = o->get<int>();
            }
            if (auto p = jj.find("pairing"); p != jj.end()) {
                if (!p->is_number_integer()) fail(path + "/pairing", "expected 0, 1 or 2");
                jn.pairing = p->get<int>();
            }
            net.junctions.push_back(jn);
        }
    }

    check_structure(net);
    if (missing_frame) fit_frames(net);
    return net;
}

}  // namespace elastinet
