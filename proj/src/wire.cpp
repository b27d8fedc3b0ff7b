#include "epus/wire.hpp"

#include <cstdio>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace epus {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

namespace {

void append_object(std::string& out, const UncertainObject& obj) {
    out += "{\"id\":";
    out += std::to_string(obj.id());
    out += ",\"seq\":";
    out += std::to_string(obj.seq());
    out += ",\"instances\":[";
    bool first_ins = true;
    for (const auto& ins : obj.instances()) {
        if (!first_ins) out += ',';
        first_ins = false;
        out += "{\"p\":";
        out += format_double(ins.prob);
        out += ",\"attrs\":[";
        for (std::size_t j = 0; j < ins.attrs.size(); ++j) {
            if (j) out += ',';
            out += format_double(ins.attrs[j]);
        }
        out += "]}";
    }
    out += "]}";
}

void check_disjoint(const UpdateMessage& msg) {
    std::set<ObjectId> sk;
    for (const auto& o : msg.new_skyline)
        if (!sk.insert(o->id()).second)
            throw std::invalid_argument("UpdateMessage: duplicate id in new_skyline");
    for (const auto& o : msg.new_candidates)
        if (sk.count(o->id()))
            throw std::invalid_argument(
                "UpdateMessage: id appears in both new_skyline and new_candidates");
}

// Strict cursor-based scanner; every mismatch reports its byte offset.
class Scanner {
  public:
    explicit Scanner(std::string_view text) : text_(text) {}

    std::size_t pos() const { return pos_; }

    void expect(std::string_view literal) {
        if (text_.substr(pos_, literal.size()) != literal)
            throw DecodeError("expected '" + std::string(literal) + "'", pos_);
        pos_ += literal.size();
    }

    bool try_consume(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() const {
        if (pos_ >= text_.size()) throw DecodeError("unexpected end of message", pos_);
        return text_[pos_];
    }

    std::uint64_t parse_uint() {
        if (pos_ >= text_.size() || text_[pos_] < '0' || text_[pos_] > '9')
            throw DecodeError("expected unsigned integer", pos_);
        std::uint64_t v = 0;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
            v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    double parse_double() {
        // Bound the numeric token inside the view before handing it to
        // strtod: the view need not be null-terminated.
        std::size_t end = pos_;
        auto digit = [&](std::size_t i) {
            return i < text_.size() && text_[i] >= '0' && text_[i] <= '9';
        };
        if (end < text_.size() && (text_[end] == '-' || text_[end] == '+')) ++end;
        while (digit(end)) ++end;
        if (end < text_.size() && text_[end] == '.') {
            ++end;
            while (digit(end)) ++end;
        }
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t ex = end + 1;
            if (ex < text_.size() && (text_[ex] == '-' || text_[ex] == '+')) ++ex;
            if (digit(ex)) {
                end = ex;
                while (digit(end)) ++end;
            }
        }
        const std::string token(text_.substr(pos_, end - pos_));
        char* parsed_end = nullptr;
        const double v = std::strtod(token.c_str(), &parsed_end);
        if (token.empty() || parsed_end != token.c_str() + token.size())
            throw DecodeError("expected number", pos_);
        pos_ = end;
        return v;
    }

    void expect_end() {
        if (pos_ != text_.size()) throw DecodeError("trailing bytes after message", pos_);
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

ObjectPtr parse_object(Scanner& sc) {
    sc.expect("{\"id\":");
    const ObjectId id = sc.parse_uint();
    sc.expect(",\"seq\":");
    const SeqNo seq = sc.parse_uint();
    sc.expect(",\"instances\":[");
    std::vector<Instance> instances;
    if (!sc.try_consume(']')) {
        do {
            sc.expect("{\"p\":");
            Instance ins;
            ins.prob = sc.parse_double();
            sc.expect(",\"attrs\":[");
            if (!sc.try_consume(']')) {
                do {
                    ins.attrs.push_back(sc.parse_double());
                } while (sc.try_consume(','));
                sc.expect("]");
            }
            sc.expect("}");
            instances.push_back(std::move(ins));
        } while (sc.try_consume(','));
        sc.expect("]");
    }
    sc.expect("}");
    const std::size_t at = sc.pos();
    try {
        return make_object(id, seq, std::move(instances));
    } catch (const std::invalid_argument& e) {
        throw DecodeError(std::string("invalid object payload: ") + e.what(), at);
    }
}

}  // namespace

std::string encode(const UpdateMessage& msg) {
    check_disjoint(msg);
    std::string out = "{\"ecn\":";
    out += std::to_string(msg.ecn_id);
    out += ",\"step\":";
    out += std::to_string(msg.step);
    out += ",\"obsolete\":[";
    for (std::size_t i = 0; i < msg.obsolete_ids.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(msg.obsolete_ids[i]);
    }
    out += "],\"new_skyline\":[";
    for (std::size_t i = 0; i < msg.new_skyline.size(); ++i) {
        if (i) out += ',';
        append_object(out, *msg.new_skyline[i]);
    }
    out += "],\"new_candidates\":[";
    for (std::size_t i = 0; i < msg.new_candidates.size(); ++i) {
        if (i) out += ',';
        append_object(out, *msg.new_candidates[i]);
    }
    out += "]}";
    return out;
}

UpdateMessage decode(std::string_view line) {
    Scanner sc(line);
    UpdateMessage msg;
    sc.expect("{\"ecn\":");
    msg.ecn_id = static_cast<int>(sc.parse_uint());
    sc.expect(",\"step\":");
    msg.step = sc.parse_uint();
    sc.expect(",\"obsolete\":[");
    if (!sc.try_consume(']')) {
        do {
            msg.obsolete_ids.push_back(sc.parse_uint());
        } while (sc.try_consume(','));
        sc.expect("]");
    }
    sc.expect(",\"new_skyline\":[");
    if (!sc.try_consume(']')) {
        do {
            msg.new_skyline.push_back(parse_object(sc));
        } while (sc.try_consume(','));
        sc.expect("]");
    }
    sc.expect(",\"new_candidates\":[");
    if (!sc.try_consume(']')) {
        do {
            msg.new_candidates.push_back(parse_object(sc));
        } while (sc.try_consume(','));
        sc.expect("]");
    }
    sc.expect("}");
    sc.expect_end();
    check_disjoint(msg);
    return msg;
}

std::size_t message_cost_bytes(const UpdateMessage& msg, std::size_t object_bytes) {
    return msg.payload_object_count() * object_bytes;
}

}  // namespace epus
