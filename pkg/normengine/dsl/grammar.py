"""Lark grammars for knowledge bases (.nkb), cases (.nc, .lf) and ground dumps.

See docs/grammar.md for the EBNF.
"""

TERMS = r"""
literal: "-" atom -> neg_literal
       | atom     -> pos_literal

atom: IDENT ("(" term ("," term)* ")")?

term: VAR                -> var
    | VAR "+" INT        -> time_plus
    | VAR "-" INT        -> time_minus
    | INT                -> int
    | IDENT "(" term ("," term)* ")" -> func
    | IDENT              -> const
    | STRING             -> string

conj: literal ("&" literal)*

IDENT: /[a-zà-öø-ÿ]\w*/
VAR: /[A-Z_]\w*/
INT: /\d+/
STRING: /"(?:[^"\\]|\\.)*"/

%import common.WS
%ignore WS
"""

RULES = (
    TERMS
    + r"""
kb: statement*

statement: IDENT ":" rule_body "." -> labelled
         | literal "."             -> fact

rule_body: conj "->" literal               -> implication
         | conj ":" literal constraint?    -> default
         | literal                         -> labelled_fact

constraint: "[" conj? "]"

case: case_item*

case_item: "#case" IDENT "."                 -> case_id
         | "#agents" IDENT ("," IDENT)* "."  -> agents
         | "#times" INT ".." INT "."         -> times
         | "#expected" literal ("," literal)* "." -> expected
         | "#absent" literal ("," literal)* "."   -> absent
         | literal "."                       -> case_fact

single_literal: literal

COMMENT: /%[^\n]*/
%ignore COMMENT
"""
)

GROUND = (
    TERMS
    + r"""
ground: ground_rule*

ground_rule: literal (":-" ground_body)? "." ORIGIN?

ground_body: ground_item ("," ground_item)*

ground_item: "not" literal -> naf_item
           | literal       -> pos_item

ORIGIN: /%[^\n]*/
"""
)
