/**
 * Undo/redo as action-list replay: the manager keeps the initial document
 * and the list of applied actions; undoing recomputes the document by
 * replaying the shortened list. Replay being the source of truth makes
 * "history replays to the current document" hold by construction.
 */

import { applyAction, replay, type EditorAction } from "./document.js";
import type { EditorDocument } from "./types.js";

export class UndoManager {
  private readonly initial: EditorDocument;
  private past: EditorAction[] = [];
  private future: EditorAction[] = [];
  private current: EditorDocument;

  constructor(initial: EditorDocument) {
    this.initial = initial;
    this.current = initial;
  }

  get document(): EditorDocument {
    return this.current;
  }

  get actions(): readonly EditorAction[] {
    return this.past;
  }

  /** Apply a new action; clears the redo branch. */
  apply(action: EditorAction): EditorDocument {
    this.current = applyAction(this.current, action);
    this.past.push(action);
    this.future = [];
    return this.current;
  }

  canUndo(): boolean {
    return this.past.length > 0;
  }

  canRedo(): boolean {
    return this.future.length > 0;
  }

  undo(): EditorDocument {
    const action = this.past.pop();
    if (!action) return this.current;
    this.future.push(action);
    this.current = replay(this.initial, this.past);
    return this.current;
  }

  redo(): EditorDocument {
    const action = this.future.pop();
    if (!action) return this.current;
    this.past.push(action);
    this.current = applyAction(this.current, action);
    return this.current;
  }

  /** Recompute from scratch; used by tests to pin the replay invariant. */
  replayAll(): EditorDocument {
    return replay(this.initial, this.past);
  }
}
