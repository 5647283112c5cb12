#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "astaxon/record.hpp"

namespace astaxon {

// One line of the dataset file:
//   asn|customers|providers|peers|prefixes|space|term1 term2 ...|label
// where label is one of the six class tokens or empty.
struct DatasetRow {
    AsRecord record;
    std::optional<AsClass> label;

    bool operator==(const DatasetRow&) const = default;
};

void write_dataset(std::ostream& out, const std::vector<DatasetRow>& rows);
void write_dataset_file(const std::string& path, const std::vector<DatasetRow>& rows);

// Throws ParseError on malformed rows and DataError on duplicate ASNs.
std::vector<DatasetRow> read_dataset(std::istream& in);
std::vector<DatasetRow> read_dataset_file(const std::string& path);

// The labeled subset, in file order; unlabeled_count reports the rest.
std::vector<LabeledExample> labeled_subset(const std::vector<DatasetRow>& rows,
                                           std::size_t* unlabeled_count = nullptr);

} // namespace astaxon
