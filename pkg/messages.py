"""
Message templates for the reasoning arena
Contains game rules, answer formats, prompt layout and step feedback
"""

# Prompt layout
ANSWER_MARKER = "Answer:"

ANSWER_INSTRUCTION = (
    "Reason as much as you need, then end your reply with one final line of the form "
    "'Answer: <your action>'. Only the text after the last 'Answer:' is read."
)

PROMPT_TEMPLATE = """{rules}

Current state (round {round} of at most {max_rounds}):
{board}
{feedback}
Answer format: {answer_format}
{instruction}"""

PROMPT_FEEDBACK_LINE = "\nResult of your previous action: {feedback}\n"

SYSTEM_PREAMBLE = (
    "You are playing a text game. Read the rules and the current state carefully "
    "and reply with a single action in the requested format."
)

# Paradigm-ban clauses appended to the system prompt
PARADIGM_BANS = {
    "code": "Do not write or simulate code.",
    "math": "Do not use mathematical formulas or equations.",
    "algorithm": "Do not describe or follow a named algorithm or systematic search procedure.",
    "natural-language": "Do not explain your reasoning in natural language; give only the answer line.",
}

# Generic feedback
FEEDBACK_NO_ANSWER = "No 'Answer:' line found. End your reply with 'Answer: <your action>'."
FEEDBACK_BAD_FORMAT = "Could not read the action. Expected format: {expected}"
FEEDBACK_SOLVED = "Solved!"
FEEDBACK_NOT_SOLVED = "Not solved. {detail}"
FEEDBACK_ROUND_CAP = "Round limit reached."

# Game rules
RULES = {
    "tower-of-hanoi": """Tower of Hanoi.
There are three pegs A, B and C. All disks start on peg A, largest at the bottom.
Move the whole stack to the target peg. Only the top disk of a peg may move, and a disk may never
be placed on a smaller one. Give the complete move list in one answer; an illegal move ends the game.""",
    "lights-out": """Lights Out on a 3x3 grid.
1 means the light is on, 0 means it is off. Pressing a cell toggles it and its orthogonal neighbours.
Give the full list of presses in one answer. You win if every light is off afterwards.""",
    "sudoku": """Sudoku.
Fill every empty cell (.) so that each row, each column and each box holds every digit from 1 to the
grid size exactly once. Given digits must not change. Give the complete grid in one answer.""",
    "one-stroke-drawing": """One Stroke Drawing.
Draw the whole graph in one stroke: give a sequence of vertices such that each consecutive pair is
joined by an edge and every edge is used exactly once. Repeated edges must be used as many times as listed.""",
    "wordle": """Wordle.
Guess the secret five-letter English word. After each guess you get one letter per position:
G means right letter in the right place, Y means the letter is in the word elsewhere, X means it is not
in the word (or not that many times). Guesses must be real words from the game's word list.""",
    "maze": """Maze.
# is a wall, . is open floor, P is you and E is the exit. Move with U (up), D (down), L (left) and
R (right). Give the whole move string in one answer. Walking into a wall ends the game.""",
    "sokoban": """Sokoban.
# wall, . floor, P you, B box, G goal, * box on a goal, + you standing on a goal.
Move with U/D/L/R. Walking into a box pushes it one cell if the cell behind it is free; you cannot pull
boxes or push two at once. A blocked move does nothing. Give the whole move string in one answer.
Your score is the fraction of boxes that end on goals.""",
    "8-puzzle": """8-puzzle.
Tiles 1-8 and a blank (_) sit on a 3x3 grid. Each move slides the blank U/D/L/R, swapping it with the
neighbouring tile; moves off the grid are ignored. Reach
1 2 3
4 5 6
7 8 _
Give the whole move string in one answer.""",
    "2048": """2048 on a 4x4 grid.
Each move slides every tile as far as possible in one direction (U/D/L/R). Two equal tiles that collide
merge into one tile of their sum, and each tile merges at most once per move. Every merge adds the new
tile's value to your score. After each move a 2 (sometimes a 4) appears on a random empty cell.
A move that changes nothing is not allowed. The game ends when no move is possible.""",
    "n-point": """N-point.
A card game like 21, but the bust threshold N is shown on the table. Each hand you start with two cards
(values 1-10). Say hit to draw another card or stand to stop. Going over N loses the hand. When you
stand, the dealer draws until reaching at least N-3; you win the hand if the dealer goes over N or you
are closer to N than the dealer. Each hand won scores 1 point.""",
    "trust-evolution": """Trust Evolution.
You play several rounds against each of a series of opponents. Every round both sides choose to
cooperate or cheat. Both cooperate: you +2, they +2. You cheat, they cooperate: you +3, they -1.
You cooperate, they cheat: you -1, they +3. Both cheat: 0 each. Opponents follow fixed but hidden
strategies. Collect as many coins as you can.""",
    "minesweeper": """Minesweeper.
Some hidden cells contain mines. ? is hidden, F is a flag, a digit is a revealed cell showing how many of
its 8 neighbours are mines. Reveal a cell or toggle a flag with 1-based row and column. Revealing a 0
opens its neighbours automatically. The first reveal is always safe; revealing a mine ends the game.
Your score is the fraction of safe cells revealed.""",
    "snake": """Snake.
H is the snake's head, S its body, * the food and # the border. Each round the snake moves one cell in
the direction you give (U/D/L/R). Eating food scores 1 and makes the snake longer. Hitting the border or
the snake's own body ends the game; turning straight back counts as hitting yourself.""",
    "black-white-copy": """Black White Copy.
The grid starts as shown and must be turned into the target pattern (W white, B black). Two operations are
available, rows numbered from 1: toggle i flips every cell of row i; copy i overwrites row i+1 with row i.
Give the full list of operations in one answer.""",
}

ANSWER_FORMATS = {
    "tower-of-hanoi": "moves like A->C, A->B, C->B",
    "lights-out": "presses as 1-based (row,col) pairs like (1,1) (2,3), or none",
    "sudoku": "the full grid, one row per line, digits only",
    "one-stroke-drawing": "vertices joined by dashes like A-B-C-A",
    "wordle": "one five-letter word like crane",
    "maze": "a string of U/D/L/R like RRDDL",
    "sokoban": "a string of U/D/L/R like RRDDL",
    "8-puzzle": "a string of U/D/L/R giving the blank's moves, like LURD",
    "2048": "one direction: U, D, L or R",
    "n-point": "hit or stand",
    "trust-evolution": "cooperate or cheat",
    "minesweeper": "reveal r c or flag r c, 1-based, like reveal 3 4",
    "snake": "one direction: U, D, L or R",
    "black-white-copy": "operations like toggle 1, copy 2, toggle 3",
}

# Tower of Hanoi
HANOI_BOARD_HEADER = "{disks} disks, target peg {target} (listed bottom to top):"
HANOI_ILLEGAL = "Move {index} ({src}->{dst}) is illegal."
HANOI_UNFINISHED = "Not every disk is on peg {target}."

# Lights Out
LIGHTS_OUT_OF_RANGE = "Cell ({row},{col}) is outside the {size}x{size} grid."
LIGHTS_REMAINING = "{count} lights are still on."

# Sudoku
SUDOKU_WRONG_SHAPE = "The grid must have {side} rows of {side} digits."
SUDOKU_CLUE_CHANGED = "The given digit at row {row}, column {col} was changed."
SUDOKU_CONFLICT = "Some row, column or box repeats a digit."

# One stroke drawing
EULER_BOARD_HEADER = "Vertices: {vertices}\nEdges ({count}):"
EULER_UNKNOWN_VERTEX = "Vertex {vertex} is not in the graph."
EULER_BAD_EDGE = "There is no unused edge between {a} and {b}."
EULER_UNUSED = "{count} edges were never drawn."

# Wordle
WORDLE_BOARD_HEADER = "Guesses left: {left}"
WORDLE_NO_GUESSES = "No guesses yet."
WORDLE_BAD_WORD = "A guess must be a single word of {length} letters."
WORDLE_NOT_IN_LIST = "'{guess}' is not in the word list; the guess was not counted."
WORDLE_FEEDBACK = "{guess}: {feedback}. Guesses left: {left}."
WORDLE_SOLVED = "{guess} is correct!"
WORDLE_OUT_OF_GUESSES = "Out of guesses. The word was {secret}."

# Maze
MAZE_WALL = "Move {index} ({move}) walks into a wall."
MAZE_NOT_AT_EXIT = "You stopped at row {row}, column {col}, not at the exit."

# Sokoban
SOKOBAN_RESULT = "{placed} of {total} boxes are on goals."

# 8-puzzle
PUZZLE8_NOT_SOLVED = "The tiles are not in goal order."

# 2048
G2048_SCORE_LINE = "Score: {score}"
G2048_NO_EFFECT = "Moving {move} changes nothing; choose another direction."
G2048_MOVED = "Moved {move}, merges scored {points}."
G2048_STUCK = "No moves left, game over."

# N-point
NPOINT_BOARD = """Threshold N = {threshold}
Hand {hand} of {hands}
Your cards: {cards} (total {total})
Hands won: {wins}
Last hand: {last}"""
NPOINT_HIT = "You drew {card}, total {total}."
NPOINT_BUST = "You drew {card}, total {total} is over {threshold}. Hand lost."
NPOINT_DEALT_BUST = "You stood on {total}, which is over {threshold}. Hand lost."
NPOINT_WON = "You stood on {player}, dealer finished on {dealer}. Hand won."
NPOINT_LOST = "You stood on {player}, dealer finished on {dealer}. Hand lost."
NPOINT_OVER = "All hands played, {wins} won."

# Trust evolution
TRUST_BOARD = "Opponent {opponent} of {opponents}, round {round} of {rounds}. Your coins: {coins}"
TRUST_ROUND = "You chose {mine}, the opponent chose {theirs}: {gained:+d} coins, total {coins}."
TRUST_NEW_OPPONENT = "A new opponent sits down."
TRUST_OVER = "All matches played, final coins {coins}."

# Minesweeper
MINES_BOARD_HEADER = "{side}x{side} field with {mines} mines"
MINES_OUT_OF_RANGE = "Cell ({row},{col}) is outside the {side}x{side} field."
MINES_ALREADY_REVEALED = "Cell ({row},{col}) is already revealed."
MINES_FLAGGED_CELL = "Cell ({row},{col}) is flagged; remove the flag before revealing it."
MINES_FLAGGED = "Flag toggled at ({row},{col})."
MINES_BOOM = "Cell ({row},{col}) was a mine. Game over."
MINES_REVEALED = "Revealed {count} cells, {revealed} of {safe} safe cells open."
MINES_CLEARED = "Every safe cell is open!"

# Snake
SNAKE_STATUS = "Heading {direction}, length {length}, food eaten {eaten}"
SNAKE_MOVED = "Moved {move}."
SNAKE_ATE = "Food eaten, length now {length}."
SNAKE_WALL = "Moving {move} hits the border at length {length}. Game over."
SNAKE_NECK = "Moving {move} turns back into the snake's own neck. Game over."
SNAKE_BODY = "Moving {move} runs into the body at length {length}. Game over."
SNAKE_FILLED = "The snake fills the whole board!"

# Black white copy
BWCOPY_CURRENT = "Current grid:"
BWCOPY_TARGET = "Target grid:"
BWCOPY_OUT_OF_RANGE = "{op} {row} is not allowed on a grid with {n} rows."
BWCOPY_MISMATCH = "{rows} rows differ from the target."
