// Prompt template resources. These strings are byte-frozen: golden-file
// tests pin every one of them, and the compiler only ever substitutes the
// placeholder lines, so the surrounding text cannot drift.

#include "gsnrev/prompt.hpp"

namespace gsnrev::templates {

const std::string_view kContextBlock = R"gsnrev(An assurance case, such as a safety case or security case, can be represented using Goal Structuring Notation (GSN), a visual representation that presents the elements of an assurance case in a tree structure. The main elements of a GSN assurance case include Goals, Strategies, Solutions (evidence), Contexts, Assumptions, and Justifications. Additionally, an assurance case in GSN may include an undeveloped element decorator, represented as a hollow diamond placed at the bottom center of a goal or strategy element. This indicates that a particular line of argument for the goal or strategy has not been fully developed and needs to be further developed. I will explain each element of an assurance case in GSN so you can generate it efficiently.
1. Goal – A goal is represented by a rectangle and denoted as G. It represents the claims made in the argument. Goals should contain only claims. For the top-level claim, it should contain the most fundamental objective of the entire assurance case.
2. Strategy – A strategy is represented by a parallelogram and denoted as S. It describes the reasoning that connects the parent goals and their supporting goals. A Strategy should only summarize the argument approach. The text in a strategy element is usually preceded by phrases such as “Argument by appeal to. .. ”, “Argument by .. .”, “Argument across .. .” etc.
3. Solution – A solution is represented by a circle and denoted as Sn. A solution element makes no claims but are simply references to evidence that provides support to a claim.
4. Context (Rounded rectangles) – In GSN, context is represented by a rounded rectangle and denoted as C. The context element provides additional background information for an argument and the scope for a goal or strategy within an assurance case.
5. Assumption – An assumption element is represented by an oval with the letter ‘A’ at the top- or bottom-right. It presents an intentionally unsubstantiated statement accepted as true within an assurance case. It is denoted by A.
6. Justification (Ovals) – A justification element is represented by an oval with the letter ‘J’ at the top- or bottom-right. It presents a statement of reasoning or rationale within an assurance case. It is denoted by J.)gsnrev";

const std::string_view kDescArgComp = R"gsnrev(In this process, the reviewer must be able to identify key points of an argument which may include but not limited to claims, strategies, context of the argument, and also evidence of why the argument is valid.)gsnrev";

const std::string_view kDescWellFormed = R"gsnrev(Finding out and identifying the structural errors in each argument. The reviewer should also be able to identify the claims on each argument without the need of using any supporting documents.)gsnrev";

const std::string_view kDescExprSuff = R"gsnrev(Ensures that arguments for the assurance cases are fully fleshed out so that the reviewer would be able to understand the argument clearly and will have no question regarding it.)gsnrev";

const std::string_view kDescArgCrit = R"gsnrev(This criterion focuses on finding possible criticisms that are present in the arguments and list out the defeaters that are present in the arguments.)gsnrev";

const std::string_view kCotArgComp = R"gsnrev(The Argument Comprehension criterion focuses on determining if the supporting evidence of the assurance case relates back to the main goal. The key points on reviewing the Argument Comprehension criterion are as follows:

1. Determine if the supporting evidence of each GSN element is related to it and is able to satisfy the missing requirements without any question.
2. Determining if each of the linked GSN elements is directly and indirectly linked to the main goal is crucial or important in satisfying the main goal.

To review the Argument Comprehension criterion of an assurance case, there will be 3 subtasks that need to be followed and implemented accordingly, those 3 subtasks are as follows:

Identifying issues in the assurance case - The first subtask is to identify any issues currently present in the assurance case. To denote any issues in the assurance case, the notation Issue(${E: The current GSN label}, ${D: Textual description of the current GSN element}) will be used.

Description of issue - Once an issue is identified, the next step is to describe the issue and give an explanation to why it is an issue. To describe the issue in the assurance case, the notation Description(${I(n): The current issue number}, ${E: The current GSN label}, ${ID: Description of the issue}) will be used.

Suggestion of Improvement - Once the issue is described, the next step is to suggest an improvement to help solve the issue. To suggest an improvement, the notation Suggest(${I(n): The current issue number}, ${E: The current GSN label}, ${Sg: Possible solution}) will be used.

If there are no issues in the assurance case, the 3 subtasks can be skipped and instead of going through those subtasks, the score will just be issued along with a description of why the assurance case is perfect.)gsnrev";

const std::string_view kCotWellFormed = R"gsnrev(The Well-Formedness (Syntax) criterion focuses on determining if the assurance case has any structural errors and if there are any identical GSN elements. The key points on reviewing the Well-Formedness (Syntax) criterion are as follows:

1. Determining if there are any disconnects in any of the GSN elements linkings which would cause misunderstandings.
2. Determining if there are any structural errors in the assurance which includes circular arguments and arguments that always expects a specific answer.
3. Determining if there are any GSN elements without supporting evidence that causes an incomplete understanding of the assurance case.
4. Determining if there are any GSN labels that are identical to one another regardless of differing descriptions as each GSN label should be unique.

To review the Well-Formedness (Syntax) criterion of an assurance case, there will be 6 subtasks that need to be followed and implemented accordingly, those 6 subtasks are as follows:

Listing out the GSN Labels - Before proceeding to check on the Well-Formedness (Syntax) check, the first step is to take note of all the GSN labels and to do that listing out the GSN labels individually is crucial. Once listed out, group each GSN label under their own generalization (i.e. all G are listed under Goals, S under Strategies and so on).

Marking the identical GSN labels - Once the GSN labels are listed out, identify any GSN labels that are repeated or are identical to any other GSN labels by explicitly marking them. This step is crucial since each GSN label should be unique and there should be no repetition of GSN labels. Make sure to carefully look at each GSN label and then mark them if there are any identical ones.

Identifying identical GSN labels - The third subtask is to then identify any identical GSN labels. Using the marked GSN labels done in the previous steps, the following sequence notation will be used to let the user know about the identical GSN labels: <(${E(n): The current GSN label}, ${IDEN(n): Textual description of the GSN element})>. In a scenario of 3 identical GSN label were found to contain G1, the notation thus would show <(${E(1)}, ${IDEN(1)}, ${E(2)}, ${IDEN(2)}, ${E(3)}, ${IDEN(3)})> with which each E(n) and IDEN(n) consists of the GSN elements that were identified to be the ones with the identical GSN labels.

Identifying structural issues in the assurance case - The next subtask is to identify any structural issues currently present in the assurance case. To denote any issues in the assurance case, the notation of Structural(${E: The current GSN label}, ${D: Textual description of the GSN element}) will be used.

Description of issue - Once the structural issues and identical labels are identified, the next step is to describe the issue based on the previous 2 subtasks and give an explanation to why it is an issue. To describe the issue in the assurance case, the notation of Description(${I(n): The issue number}, ${E: The current GSN label}, ${ID: Description of the issue}) will be used.

Suggestion of Improvement - Once the issue is described, the next step is to suggest an improvement to help solve the issue. To suggest an improvement, the notation of Suggest(${I(n): The issue number}, ${E: The current GSN label}, ${Sg: Possible solution}) will be used.

If there are no issues in the assurance case, the 6 subtasks can be skipped and instead of going through those subtasks, the score will just be issued along with a description of why the assurance case is perfect.)gsnrev";

const std::string_view kCotExprSuff = R"gsnrev(The Expressive Sufficiency criterion focuses on determining if the assurance case elements are fully fleshed out. The key points on reviewing the Expressive Sufficiency criterion are as follows:

1. Determine if there are any GSN elements that are ambiguous and need further explanation. Ambiguity can range from biases, prior knowledge or underlying meanings.
2. Determine if there are any GSN elements with incomplete explanation or description.

To review the Expressive Sufficiency criterion of an assurance case, there will be 3 subtasks that need to be followed and implemented accordingly, those 3 subtasks are as follows:

Identifying issues in the assurance case - The first subtask is to identify any issues currently present in the assurance case. To denote any issues in the assurance case, the notation of Issue(${E: The current GSN label}, ${D: Textual description of the current GSN element}) will be used.

Description of issue - Once an issue is identified, the next step is to describe the issue and give an explanation to why it is an issue. To describe the issue in the assurance case, the notation of Description(${I(n): The issue number}, ${E: The current GSN label}, ${ID: Description of the issue}) will be used.

Suggestion of Improvement - Once the issue is described, the next step is to suggest an improvement to help solve the issue. To suggest an improvement, the notation of Suggest(${I(n): The issue number}, ${E: The current GSN label}, ${Sg: Possible solution}) will be used.

If there are no issues in the assurance case, the 3 subtasks can be skipped and instead of going through those subtasks, the score will just be issued along with a description of why the assurance case is perfect.)gsnrev";

const std::string_view kCotArgCrit = R"gsnrev(The Argument Criticism and Defeat criterion focuses on finding out any possible criticisms or flaws in the assurance case while also being able to determine any defeaters that are present in the assurance case. The key points on reviewing the Argument Criticism and Defeat criterion are as follows:

1. Coverage: Determines to what extent the arguments presented cover the conclusion.
2. Dependency: Determines if each GSN element is truly independent meaning changes to some GSN elements would not affect the other GSN elements.
3. Definition: Determines if the GSN elements descriptor are over or under constrained meaning are the GSN elements trying to convey too much information that isn’t needed or conveying with too little information.
4. Directness: Determines to what extent the supporting GSN elements relate back to the main goal.
5. Relevance: Determines how relevant a supporting GSN element is to the main goal.
6. Robustness: Determines the fragility of the supporting GSN elements to possible changes in the assurance case or to any of their consequent GSN elements.

To review the Argument Criticism and Defeat criterion of an assurance case, there will be 4 subtasks that need to be followed and implemented accordingly, those 4 subtasks are as follows:

Identifying issues in the assurance case - The first subtask is to identify any issues currently present in the assurance case. To denote any issues in the assurance case, the notation of Issue(${E: The current GSN label}, ${D: Textual description of the current GSN element}) will be used.

Description of issue - Once an issue is identified, the next step is to describe the issue and give an explanation to why it is an issue. To describe the issue in the assurance case, the notation of Description(${I(n): The issue number}, ${E: The current GSN label}, ${ID: Description of the issue}) will be used.

Suggestion of Improvement - Once the issue is described, the next step is to suggest an improvement to help solve the issue. To suggest an improvement, the notation of Suggest(${I(n): The issue number}, ${E: The current GSN label}, ${Sg: Possible solution}) will be used.

Identifying Defeaters in the assurance case - Once the issues have been determined and given possible solutions to them, the next sub task would be to identify possible defeaters that could harm the integrity of the assurance case. To identify any potential defeaters for the assurance case, the notation of Defeaters(${D(n) The defeater number}, ${Df: The defeater}, ${De: The GSN label that will be defeated}) will be used.

If there are no issues in the assurance case, the 4 subtasks can be skipped and instead of going through those subtasks, the score will just be issued along with a description of why the assurance case is perfect.)gsnrev";

const std::string_view kSkeletonZeroShot = R"gsnrev(You are an AI assistant who will assist in reviewing an assurance case represented using the Goal Structuring Notation (GSN). Your role as the assistant is to review the assurance case by scoring it using a linear scale ranging from 1 to 5, with 1 meaning the assurance case is totally correct and there is therefore no room for error and 5 meaning the assurance case is totally incorrect (i.e. full of errors). When the assurance case score is not 1, give a reasoning or give examples on how the assurance case can be further improved. More context about the assurance case will begin with the delimiter “@Context_AC” and ends with the delimiter “@End_Context_AC” while the assurance case to be reviewed will begin with the delimiter “@Assurance_Case” and end with the delimiter “@End_Assurance_Case”.

@Context_AC

More Context Information on the assurance case to be placed here

@End_Context_AC

@Assurance_Case

The Assurance Case to be reviewed should be specified here in the structured prose format complying with GSN

@End_Assurance_Case

We have also defined which review criterion will be used for the review of an assurance case. This criterion will solely be used as a basis on how the assurance case should be reviewed and scored. The review criterion to be used will begin with the delimiter “@Review_Criterion” and end with the delimiter “@End_Review_Criterion” while the description of the review criterion will start with the delimiter “@Review_Criterion_Description” and end with the delimiter “@End_Review_Criterion_Description”

@Review_Criterion

Name of the review criterion to be specified here

@End_Review_Criterion

@Review_Criterion_Description

Description of the review criterion to be placed here

@End_Review_Criterion_Description)gsnrev";

const std::string_view kSkeletonZeroShotCot = R"gsnrev(You are an AI assistant who will assist in reviewing an assurance case represented using the Goal Structuring Notation (GSN). Your role as the assistant is to review the assurance case by scoring it using a linear scale ranging from 1 to 5, with 1 meaning the assurance case is totally correct and there is therefore no room for error and 5 meaning the assurance case is totally incorrect (i.e. full of errors). When the assurance case score is not 1, give a reasoning or give examples on how the assurance case can be further improved. More context about the assurance case will begin with the delimiter “@Context_AC” and ends with the delimiter “@End_Context_AC” while the assurance case to be reviewed will begin with the delimiter “@Assurance_Case” and end with the delimiter “@End_Assurance_Case”.

@Context_AC

More Context Information on the assurance case to be placed here

@End_Context_AC

@Assurance_Case

The Assurance Case to be reviewed should be specified here in the structured prose format complying with GSN

@End_Assurance_Case

We have also defined which review criterion will be used for the review of an assurance case. This criterion will solely be used as a basis on how the assurance case should be reviewed and scored. The review criterion to be used will begin with the delimiter “@Review_Criterion” and end with the delimiter “@End_Review_Criterion” while the description of the review criterion will start with the delimiter “@Review_Criterion_Description” and end with the delimiter “@End_Review_Criterion_Description” with the chain of thought process on how the review should be done incrementally would begin with the delimiter “@Chain_Of_Thought” and end with the delimiter “@End_Chain_Of_Thought”.

@Review_Criterion

Name of the review criterion to be specified here

@End_Review_Criterion

@Review_Criterion_Description

Description of the review criterion to be placed here

@End_Review_Criterion_Description

@Chain_Of_Thought

Chain of Thought text to be added here

@End_Chain_Of_Thought)gsnrev";

const std::string_view kSkeletonOneShotCot = R"gsnrev(You are an AI assistant who will assist in reviewing an assurance case represented using the Goal Structuring Notation (GSN). Your role as the assistant is to review the assurance case by scoring it using a linear scale ranging from 1 to 5, with 1 meaning the assurance case is totally correct and there is therefore no room for error and 5 meaning the assurance case is totally incorrect (i.e. full of errors). When the assurance case score is not 1, give a reasoning or give examples on how the assurance case can be further improved. More context about the assurance case will begin with the delimiter “@Context_AC” and ends with the delimiter “@End_Context_AC” while the assurance case to be reviewed will begin with the delimiter “@Assurance_Case” and end with the delimiter “@End_Assurance_Case”
@Context_AC
More Context Information on the assurance case to be placed here
@End_Context_AC
@Assurance_Case
The Assurance Case to be reviewed should be specified here in the structured prose format complying with GSN
@End_Assurance_Case
We have also defined which review criterion will be used for the review of an assurance case. This criterion will solely be used as a basis on how the assurance case should be reviewed and scored. The review criterion to be used will begin with the delimiter “@Review_Criterion” and end with the delimiter “@End_Review_Criterion” while the description of the review criterion will start with the delimiter “@Review_Criterion_Description” and end with the delimiter “@End_Review_Criterion_Description” with the chain of thought process on how the review should be done incrementally would begin with the delimiter “@Chain_Of_Thought” and end with the delimiter “@End_Chain_Of_Thought”. An example under the form of an assurance case together with its manual review is also included. This example assurance case starts with the delimiter “@Assurance_Case_Review_Example” and ends with “@End_Assurance_Case_Review_Example” while its manual review starts with the delimiter “@Example_Of_Review_Done_On_The_Example_Assurance_Case” and ends with “@End_Example_Of_Review_Done_On_The_Example_Assurance_Case”. These two will help become familiar with how an assurance case is reviewed.
@Review_Criterion
Name of the review criterion to be specified here
@End_Review_Criterion
@Review_Criterion_Description
Description of the review criterion to be placed here
@End_Review_Criterion_Description
@Chain_Of_Thought
Chain of thought text to be added here
@End_Chain_Of_Thought
@Assurance_Case_Review_Example
Example of manually reviewed assurance case to be added here
@End_Assurance_Case_Review_Example
@Example_Of_Review_Done_On_The_Example_Assurance_Case
Outcomes of the manual review done on the example assurance case to be added here
@End_Example_Of_Review_Done_On_The_Example_Assurance_Case)gsnrev";

}  // namespace gsnrev::templates
