// Copyright 2026 The plmneuron Authors
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

// Prompt templates, verbatim. Placeholders are substituted by exact string
// replacement.

#ifndef PLMNEURON_SRC_TEMPLATES_H_
#define PLMNEURON_SRC_TEMPLATES_H_

#include <string_view>

namespace plmneuron::internal {

inline constexpr std::string_view kExplainerSystemTemplate = R"tmpl(You are an AI researcher investigating a specific neuron inside a protein language model. Your task is to describe the biological features of protein sequences that cause the neuron to strongly activate. Your goal is to generalize the neuron label by finding patterns in the features across all examples provided.

You will be given the following information:

<protein_sequences>
{{PROTEIN_SEQUENCES}}
</protein_sequences>

<biological_features>
{{BIOLOGICAL_FEATURES}}
</biological_features>

<activation_values>
{{ACTIVATION_VALUES}}
</activation_values>

Analyze the data provided:
1. Examine the protein sequences and their corresponding biological features.
2. Pay attention to the activation values for each sequence.
3. Look for common patterns or characteristics among sequences with high activation values.
4. Consider your knowledge of biology to interpret the significance of these patterns.

Formulate your description:
1. Identify the most important 1-2 features that consistently appear in sequences with high activation.
2. Focus on features that are common across most or all high-activation sequences.
3. Disregard features that vary significantly among the examples.
4. Create a concise, one-sentence description that captures the essence of what causes the neuron to strongly activate.

Output your final description inside <neuron_description> tags. Ensure your description:
- Is limited to one sentence
- Uses as few words as possible
- Directly states the relevant features without introductory phrases
- Describes only consistent patterns across the provided examples

Example high-quality responses:
"Strongly activates for sequences of membrane proteins involved in transmembrane transport processes."
"Strongly activates for proteins with negative gravy scores"
"Strongly activates for glycoproteins involved in cellular structural functions")tmpl";

inline constexpr std::string_view kExplainerSummaryTemplate = R"tmpl(You will be given a list of DNA or protein sequences and their associated biological features where a neuron strongly activates. Your task is to summarize the shared biological features among these sequences in one concise sentence.

Here is the list of sequences and their associated features:

<sequences_and_features>
{{SEQUENCES_AND_FEATURES}}
</sequences_and_features>

To complete this task, follow these steps:

1. Carefully read through all the sequences and their associated biological features.
2. Identify common themes or patterns in the biological features across the sequences.
3. Focus on the most prominent and frequently occurring features.
4. Synthesize these common features into a single, concise statement.

Your summary should capture the essence of the shared biological features using the fewest words possible while still conveying the key information.

Provide your summary in the following format:
<summary>
[Your one-sentence summary of shared biological features]
</summary>

Remember, brevity is crucial. Aim to use no more words than absolutely necessary to accurately convey the shared biological features.)tmpl";

inline constexpr std::string_view kSimulatorTemplate = R"tmpl(Task: Predict activation 0 - 10. ONLY ANSWER WITH A NUMBER
Neuron: {row["neuron_id"]}
Description: {hypo}
Sequence: {seq}
Features: {comp}
ONLY ANSWER WITH A NUMBER BETWEEN 0 AND 10.)tmpl";

inline constexpr std::string_view kSelectionTemplate = R"tmpl(Answer only with a True or False. A neuron described as {neuron} be useful in trying to generate a protein with the following characteristic: {characteristic}?

For example:
Prompt: "Answer only with a True or False. A neuron described as "Encodes information about Zinc Fingers" be useful in trying to generate a protein with the following characteristic: "Alpha-Sheet"?", Answer: False
Prompt: "Answer only with a True or False. A neuron described as "Associated with high hydrophobicity" be useful in trying to generate a protein with the following characteristic: "Increasing hydrophobicity"?", Answer: True)tmpl";

}  // namespace plmneuron::internal

#endif  // PLMNEURON_SRC_TEMPLATES_H_
