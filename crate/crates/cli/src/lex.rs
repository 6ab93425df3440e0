use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Int(u128),
    Ident(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    Equals,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Int(n) => write!(f, "{n}"),
            TokenKind::Ident(s) => write!(f, "{s}"),
            TokenKind::LBracket => f.write_str("["),
            TokenKind::RBracket => f.write_str("]"),
            TokenKind::LParen => f.write_str("("),
            TokenKind::RParen => f.write_str(")"),
            TokenKind::Comma => f.write_str(","),
            TokenKind::Plus => f.write_str("+"),
            TokenKind::Minus => f.write_str("-"),
            TokenKind::Star => f.write_str("*"),
            TokenKind::Caret => f.write_str("^"),
            TokenKind::Equals => f.write_str("="),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// Byte offset of the first character in the input line.
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for LexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LexError at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for LexError {}

/// Split one statement into tokens. A `#` starts a comment that runs to the
/// end of the input.
pub fn tokenize(input: &str) -> Result<Vec<Token>, LexError> {
    let mut tokens = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(offset, ch)) = chars.peek() {
        let single = match ch {
            '[' => Some(TokenKind::LBracket),
            ']' => Some(TokenKind::RBracket),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            ',' => Some(TokenKind::Comma),
            '+' => Some(TokenKind::Plus),
            '-' => Some(TokenKind::Minus),
            '*' => Some(TokenKind::Star),
            '^' => Some(TokenKind::Caret),
            '=' => Some(TokenKind::Equals),
            _ => None,
        };
        if let Some(kind) = single {
            chars.next();
            tokens.push(Token { kind, offset });
            continue;
        }
        if ch == '#' {
            break;
        }
        if ch.is_whitespace() {
            chars.next();
        } else if ch.is_ascii_digit() {
            let mut end = offset;
            while let Some(&(i, c)) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            let text = &input[offset..end];
            let n = text.parse::<u128>().map_err(|_| LexError {
                offset,
                message: format!("integer literal {text} is too large"),
            })?;
            tokens.push(Token {
                kind: TokenKind::Int(n),
                offset,
            });
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let mut end = offset;
            while let Some(&(i, c)) = chars.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            tokens.push(Token {
                kind: TokenKind::Ident(input[offset..end].to_string()),
                offset,
            });
        } else {
            return Err(LexError {
                offset,
                message: format!("unexpected character '{ch}'"),
            });
        }
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use TokenKind::*;

    fn kinds(s: &str) -> Vec<TokenKind> {
        tokenize(s).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn matrix_literal() {
        assert_eq!(
            kinds("[[2,3],[75,67]]"),
            vec![
                LBracket, LBracket, Int(2), Comma, Int(3), RBracket, Comma, LBracket,
                Int(75), Comma, Int(67), RBracket, RBracket
            ]
        );
    }

    #[test]
    fn call_and_product() {
        assert_eq!(
            kinds("inv(A)*A"),
            vec![
                Ident("inv".into()),
                LParen,
                Ident("A".into()),
                RParen,
                Star,
                Ident("A".into())
            ]
        );
    }

    #[test]
    fn offsets_and_errors() {
        let err = tokenize("2 @ 3").unwrap_err();
        assert_eq!(err.offset, 2);
        let toks = tokenize("let  x = 10").unwrap();
        assert_eq!(toks.iter().map(|t| t.offset).collect::<Vec<_>>(), [0, 5, 7, 9]);
        assert!(tokenize("99999999999999999999999999999999999999999").is_err());
        assert_eq!(tokenize("é").unwrap_err().offset, 0);
    }

    #[test]
    fn comments_and_blank() {
        assert!(kinds("   ").is_empty());
        assert_eq!(kinds("A # trailing"), vec![Ident("A".into())]);
        assert!(kinds("# only a comment").is_empty());
    }
}
