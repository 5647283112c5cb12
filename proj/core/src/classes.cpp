#include "astaxon/classes.hpp"
#include "astaxon/record.hpp"

namespace astaxon {

std::string_view class_token(AsClass c) {
    switch (c) {
        case AsClass::LargeIsp: return "large_isp";
        case AsClass::SmallIsp: return "small_isp";
        case AsClass::CustomerAs: return "customer";
        case AsClass::University: return "university";
        case AsClass::Ixp: return "ixp";
        case AsClass::Nic: return "nic";
    }
    return "";
}

std::optional<AsClass> class_from_token(std::string_view token) {
    for (AsClass c : all_classes()) {
        if (class_token(c) == token) return c;
    }
    return std::nullopt;
}

std::uint32_t scalar_value(const AsRecord& rec, ScalarAttribute attr) {
    switch (attr) {
        case ScalarAttribute::Customers: return rec.customers;
        case ScalarAttribute::Providers: return rec.providers;
        case ScalarAttribute::Peers: return rec.peers;
        case ScalarAttribute::Prefixes: return rec.prefixes;
        case ScalarAttribute::Space: return rec.space;
    }
    return 0;
}

std::string_view attribute_name(ScalarAttribute attr) {
    switch (attr) {
        case ScalarAttribute::Customers: return "customers";
        case ScalarAttribute::Providers: return "providers";
        case ScalarAttribute::Peers: return "peers";
        case ScalarAttribute::Prefixes: return "prefixes";
        case ScalarAttribute::Space: return "space";
    }
    return "";
}

std::optional<ScalarAttribute> attribute_from_name(std::string_view name) {
    for (ScalarAttribute a : all_scalar_attributes()) {
        if (attribute_name(a) == name) return a;
    }
    return std::nullopt;
}

} // namespace astaxon
