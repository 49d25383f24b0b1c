//! Tokenizer for the script language. Lexing is total: characters outside
//! the alphabet become diagnostic tokens that the parser reports with their
//! position. Positions are 1-based.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Int,
    Punct,
    Keyword,
    Unknown,
    Eof,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub line: u32,
    pub column: u32,
}

const KEYWORDS: [&str; 3] = ["let", "print", "assert"];

pub fn lex(source: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut line: u32 = 1;
    let mut column: u32 = 1;
    let mut chars = source.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tok_line, tok_col) = (line, column);
        let advance =
            |chars: &mut std::iter::Peekable<std::str::Chars>, line: &mut u32, column: &mut u32| {
                let c = chars.next().unwrap();
                if c == '\n' {
                    *line += 1;
                    *column = 1;
                } else {
                    *column += 1;
                }
                c
            };
        if c.is_whitespace() {
            advance(&mut chars, &mut line, &mut column);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                advance(&mut chars, &mut line, &mut column);
                if c == '\n' {
                    break;
                }
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut lexeme = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    lexeme.push(advance(&mut chars, &mut line, &mut column));
                } else {
                    break;
                }
            }
            tokens.push(Token {
                kind: TokenKind::Int,
                lexeme,
                line: tok_line,
                column: tok_col,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut lexeme = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_alphanumeric() || c == '_' {
                    lexeme.push(advance(&mut chars, &mut line, &mut column));
                } else {
                    break;
                }
            }
            let kind = if KEYWORDS.contains(&lexeme.as_str()) {
                TokenKind::Keyword
            } else {
                TokenKind::Ident
            };
            tokens.push(Token {
                kind,
                lexeme,
                line: tok_line,
                column: tok_col,
            });
            continue;
        }
        if "+-*^()[],;=!".contains(c) {
            let first = advance(&mut chars, &mut line, &mut column);
            let mut lexeme = first.to_string();
            // two-character comparators
            if (first == '=' || first == '!') && chars.peek() == Some(&'=') {
                lexeme.push(advance(&mut chars, &mut line, &mut column));
            }
            tokens.push(Token {
                kind: TokenKind::Punct,
                lexeme,
                line: tok_line,
                column: tok_col,
            });
            continue;
        }
        let unknown = advance(&mut chars, &mut line, &mut column);
        tokens.push(Token {
            kind: TokenKind::Unknown,
            lexeme: unknown.to_string(),
            line: tok_line,
            column: tok_col,
        });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        lexeme: String::new(),
        line,
        column,
    });
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based() {
        let tokens = lex("let x = 3;");
        assert_eq!(tokens[0].kind, TokenKind::Keyword);
        assert_eq!((tokens[0].line, tokens[0].column), (1, 1));
        assert_eq!(tokens[1].lexeme, "x");
        assert_eq!(tokens[1].column, 5);
        assert_eq!(tokens[2].lexeme, "=");
        assert_eq!(tokens[3].lexeme, "3");
        assert_eq!(tokens[4].lexeme, ";");
    }

    #[test]
    fn comments_and_newlines() {
        let tokens = lex("# comment\nprint 1;");
        assert_eq!(tokens[0].lexeme, "print");
        assert_eq!((tokens[0].line, tokens[0].column), (2, 1));
    }

    #[test]
    fn comparators() {
        let tokens = lex("a == b != c");
        assert_eq!(tokens[1].lexeme, "==");
        assert_eq!(tokens[3].lexeme, "!=");
    }

    #[test]
    fn unknown_characters_are_diagnostic_tokens() {
        let tokens = lex("print 1 $;");
        let unknown = tokens
            .iter()
            .find(|t| t.kind == TokenKind::Unknown)
            .unwrap();
        assert_eq!(unknown.lexeme, "$");
        assert_eq!(unknown.column, 9);
    }
}
